#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nesim/dynamics.hpp"

namespace nesim {

struct IntegrationConfig {
  double step = 1e-3;
  double horizon = 10.0;
  int record_every = 1;
  // Early stop when NE residual and consensus error are both below this;
  // 0 disables. Requires z_star to be passed to integrate.
  double stop_tol = 0.0;
};

enum class StopReason { Horizon, Tolerance, Error };

struct Trajectory {
  std::vector<double> times;
  std::vector<SeekerState> states;
  StopReason stop_reason = StopReason::Horizon;
  std::string error_message;  // set when stop_reason == Error
};

// One classical RK4 update; all state blocks share the same stage
// evaluations. Throws NonFinite if the result contains a non-finite entry;
// field errors propagate.
SeekerState rk4_step(const std::function<SeekerState(const SeekerState&)>& field,
                     const SeekerState& state, double h);

// Fixed-step integration from t = 0 to the horizon (or early stop).
// Recorded times are exact step multiples (step index times h). The final
// reached state is always recorded. On DegenerateEstimate/NonFinite the
// partial trajectory up to the last good step is returned with
// stop_reason = Error instead of throwing.
Trajectory integrate(const AlgorithmSpec& spec, const DiGraph& g,
                     const GameInterface& game, const SeekerState& state0,
                     const IntegrationConfig& cfg,
                     std::optional<Eigen::VectorXd> z_star = std::nullopt);

}  // namespace nesim
