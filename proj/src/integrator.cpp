#include "nesim/integrator.hpp"

#include <cmath>

#include "nesim/analysis.hpp"

namespace nesim {

namespace {

SeekerState axpy(const SeekerState& x, double c, const SeekerState& d) {
  SeekerState out;
  out.Z = x.Z + c * d.Z;
  out.has_xi = x.has_xi && d.Xi.size() > 0;
  if (out.has_xi) {
    out.Xi = x.Xi + c * d.Xi;
  } else {
    out.Xi = x.Xi;
    out.has_xi = x.has_xi;
  }
  return out;
}

bool state_finite(const SeekerState& s) {
  return s.Z.allFinite() && (s.Xi.size() == 0 || s.Xi.allFinite());
}

}  // namespace

SeekerState rk4_step(const std::function<SeekerState(const SeekerState&)>& field,
                     const SeekerState& state, double h) {
  if (h <= 0.0) throw ValidationError("step size must be positive");
  SeekerState k1 = field(state);
  SeekerState k2 = field(axpy(state, 0.5 * h, k1));
  SeekerState k3 = field(axpy(state, 0.5 * h, k2));
  SeekerState k4 = field(axpy(state, h, k3));
  SeekerState out = state;
  out.Z += (h / 6.0) * (k1.Z + 2.0 * k2.Z + 2.0 * k3.Z + k4.Z);
  if (state.has_xi && k1.Xi.size() > 0) {
    out.Xi += (h / 6.0) * (k1.Xi + 2.0 * k2.Xi + 2.0 * k3.Xi + k4.Xi);
  }
  if (!state_finite(out)) {
    throw NonFinite("non-finite state after RK4 step");
  }
  return out;
}

Trajectory integrate(const AlgorithmSpec& spec, const DiGraph& g,
                     const GameInterface& game, const SeekerState& state0,
                     const IntegrationConfig& cfg,
                     std::optional<Eigen::VectorXd> z_star) {
  if (cfg.step <= 0.0 || cfg.horizon < cfg.step) {
    throw ValidationError("need 0 < step <= horizon");
  }
  if (cfg.record_every < 1) throw ValidationError("record_every must be >= 1");
  if (cfg.stop_tol < 0.0) throw ValidationError("stop_tol must be >= 0");
  if (cfg.stop_tol > 0.0 && !z_star) {
    throw ValidationError("early stopping needs the equilibrium z_star");
  }
  if (state0.Z.rows() != g.size() || state0.Z.cols() != g.size()) {
    throw ValidationError("initial state dimension mismatch with graph");
  }
  if (game.size() != g.size()) {
    throw ValidationError("game and graph sizes disagree");
  }

  auto field = make_field(spec, g, game);
  const long total_steps = std::lround(cfg.horizon / cfg.step);

  Trajectory traj;
  traj.stop_reason = StopReason::Horizon;
  SeekerState state = state0;
  if (spec.variant != Variant::Adaptive) state.has_xi = false;

  auto record = [&](long step_index) {
    traj.times.push_back(step_index * cfg.step);
    traj.states.push_back(state);
  };
  record(0);

  for (long k = 1; k <= total_steps; ++k) {
    try {
      state = rk4_step(field, state, cfg.step);
      // Positivity is part of the accepted-state contract, not only of the
      // stage evaluations.
      if (state.has_xi &&
          state.Xi.diagonal().minCoeff() < kEstimatePositivityFloor) {
        throw DegenerateEstimate(
            "estimator diagonal fell below the positivity floor after a step");
      }
    } catch (const NumericalError& e) {
      traj.stop_reason = StopReason::Error;
      traj.error_message = e.what();
      return traj;
    }
    bool at_end = (k == total_steps);
    if (k % cfg.record_every == 0 || at_end) record(k);
    if (cfg.stop_tol > 0.0) {
      double ne = (state.Z.rowwise() - z_star->transpose()).rowwise().norm().maxCoeff();
      double cons = consensus_error(state.Z);
      if (ne <= cfg.stop_tol && cons <= cfg.stop_tol) {
        if (k % cfg.record_every != 0 && !at_end) record(k);
        traj.stop_reason = StopReason::Tolerance;
        return traj;
      }
    }
  }
  return traj;
}

}  // namespace nesim
