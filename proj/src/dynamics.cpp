#include "nesim/dynamics.hpp"

#include <cmath>

namespace nesim {

namespace {

// Zdot = -alpha * diag(rowScale) * L * Z - diag-embed(F_ext(Z)).
Eigen::MatrixXd scaled_consensus_field(const Eigen::MatrixXd& L,
                                       const GameInterface& game, double alpha,
                                       const Eigen::VectorXd& row_scale,
                                       const Eigen::MatrixXd& Z) {
  Eigen::MatrixXd dZ = -alpha * (row_scale.asDiagonal() * (L * Z));
  Eigen::VectorXd fext = extended_pseudogradient(game, Z);
  dZ.diagonal() -= fext;
  return dZ;
}

}  // namespace

Eigen::MatrixXd field_balanced(const DiGraph& g, const GameInterface& game,
                               double alpha, const Eigen::MatrixXd& Z) {
  return scaled_consensus_field(g.laplacian(), game, alpha,
                                Eigen::VectorXd::Ones(g.size()), Z);
}

Eigen::MatrixXd field_nominal(const DiGraph& g, const GameInterface& game,
                              double alpha, const Eigen::VectorXd& xi,
                              ScalingMode mode, const Eigen::MatrixXd& Z) {
  if (xi.minCoeff() <= 0.0) {
    throw ValidationError("xi must be componentwise positive");
  }
  Eigen::VectorXd scale =
      mode == ScalingMode::BalanceCorrected ? xi : xi.cwiseInverse().eval();
  return scaled_consensus_field(g.laplacian(), game, alpha, scale, Z);
}

Eigen::MatrixXd estimator_field(const DiGraph& g, const Eigen::MatrixXd& Xi) {
  // Stacked per column: d/dt Xi(:,c) = -L * Xi(:,c).
  return -(g.laplacian() * Xi);
}

SeekerState field_adaptive(const DiGraph& g, const GameInterface& game,
                           double alpha, ScalingMode mode,
                           const SeekerState& state) {
  Eigen::VectorXd diag = state.Xi.diagonal();
  if (diag.minCoeff() < kEstimatePositivityFloor) {
    throw DegenerateEstimate(
        "estimator diagonal fell below the positivity floor; reduce the step");
  }
  Eigen::VectorXd scale =
      mode == ScalingMode::BalanceCorrected ? diag : diag.cwiseInverse().eval();
  SeekerState d;
  d.Z = scaled_consensus_field(g.laplacian(), game, alpha, scale, state.Z);
  d.Xi = estimator_field(g, state.Xi);
  d.has_xi = true;
  return d;
}

double min_gain(const GameConstants& constants, double lambda) {
  if (lambda <= 0.0) throw ValidationError("gain threshold needs lambda > 0");
  double l = constants.l();
  return (l * l / constants.mono_lower + l) / lambda;
}

double lyapunov_decay_rate(const GameConstants& constants, double alpha,
                           double lambda2, int n) {
  double l = constants.l();
  // Positive definiteness of the 2x2 certificate matrix is algebraically
  // equivalent to alpha exceeding the gain threshold, and testing that
  // directly rejects alpha sitting exactly on the boundary even when rounding
  // would leave the smallest eigenvalue marginally positive.
  if (alpha * lambda2 - l <= l * l / constants.mono_lower) {
    throw ValidationError("certificate matrix not positive definite; alpha too small");
  }
  Eigen::Matrix2d A;
  A << constants.mono_lower / n, -l / std::sqrt(double(n)),
      -l / std::sqrt(double(n)), alpha * lambda2 - l;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(A);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig <= 0.0) {
    throw ValidationError("certificate matrix not positive definite; alpha too small");
  }
  return 2.0 * min_eig;
}

SeekerState initial_state(int n, std::optional<Eigen::MatrixXd> z0) {
  SeekerState s;
  if (z0) {
    if (z0->rows() != n || z0->cols() != n) {
      throw ValidationError("initial Z must be n x n");
    }
    s.Z = *z0;
  } else {
    s.Z.resize(n, n);
    for (int i = 0; i < n; ++i) s.Z.row(i).setConstant(double(i + 1) / n);
  }
  s.Xi = Eigen::MatrixXd::Identity(n, n);
  s.has_xi = true;
  return s;
}

std::function<SeekerState(const SeekerState&)> make_field(
    const AlgorithmSpec& spec, const DiGraph& g, const GameInterface& game) {
  if (spec.alpha <= 0.0) throw ValidationError("alpha must be positive");
  switch (spec.variant) {
    case Variant::Balanced:
      return [&g, &game, alpha = spec.alpha](const SeekerState& s) {
        SeekerState d;
        d.Z = field_balanced(g, game, alpha, s.Z);
        return d;
      };
    case Variant::NominalUnbalanced: {
      if (!spec.xi) {
        throw ValidationError("NominalUnbalanced variant requires xi");
      }
      Eigen::VectorXd xi = *spec.xi;
      if (xi.size() != g.size() || xi.minCoeff() <= 0.0) {
        throw ValidationError("xi must be a positive length-n vector");
      }
      return [&g, &game, alpha = spec.alpha, mode = spec.scaling_mode,
              xi](const SeekerState& s) {
        SeekerState d;
        d.Z = field_nominal(g, game, alpha, xi, mode, s.Z);
        return d;
      };
    }
    case Variant::Adaptive:
      return [&g, &game, alpha = spec.alpha,
              mode = spec.scaling_mode](const SeekerState& s) {
        return field_adaptive(g, game, alpha, mode, s);
      };
  }
  throw ValidationError("unknown algorithm variant");
}

}  // namespace nesim
