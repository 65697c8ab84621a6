#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "nesim/digraph.hpp"
#include "nesim/game.hpp"

namespace nesim {

// Row i of Z is agent i's estimate of all strategies; Z_ii is agent i's own
// decision. Xi carries the per-agent left-eigenvector estimates (row i is
// agent i's estimator state) and is active only for the adaptive variant.
struct SeekerState {
  Eigen::MatrixXd Z;
  Eigen::MatrixXd Xi;
  bool has_xi = false;
};

enum class Variant { Balanced, NominalUnbalanced, Adaptive };

struct AlgorithmSpec {
  Variant variant = Variant::Balanced;
  double alpha = 1.0;
  ScalingMode scaling_mode = ScalingMode::BalanceCorrected;
  // Required for NominalUnbalanced; ignored otherwise.
  std::optional<Eigen::VectorXd> xi;
};

// Minimum Xi_ii accepted during adaptive integration. Positivity holds in
// continuous time; a violation after discretization is reported as
// DegenerateEstimate rather than clamped.
inline constexpr double kEstimatePositivityFloor = 1e-12;

// Zdot for the proportional-gain rule on a weight-balanced digraph:
// row i = -alpha * sum_j a_ij (z^i - z^j) - e_i * grad_i J_i(z^i).
// alpha = 1 reproduces the baseline augmented gradient-play dynamics.
Eigen::MatrixXd field_balanced(const DiGraph& g, const GameInterface& game,
                               double alpha, const Eigen::MatrixXd& Z);

// Same rule with the consensus term of row i rescaled by xi_i
// (BalanceCorrected) or 1/xi_i (PaperLiteral) to correct graph imbalance.
Eigen::MatrixXd field_nominal(const DiGraph& g, const GameInterface& game,
                              double alpha, const Eigen::VectorXd& xi,
                              ScalingMode mode, const Eigen::MatrixXd& Z);

// Plain consensus diffusion of the eigenvector estimates: row i of the
// result is -sum_j a_ij (xi^i - xi^j). Column c evolves as -L * column c.
Eigen::MatrixXd estimator_field(const DiGraph& g, const Eigen::MatrixXd& Xi);

// Adaptive rule: each agent rescales its consensus term with its own current
// estimate Xi_ii instead of the true xi_i, and runs the estimator alongside.
// Throws DegenerateEstimate if any Xi_ii is below the positivity floor.
SeekerState field_adaptive(const DiGraph& g, const GameInterface& game,
                           double alpha, ScalingMode mode,
                           const SeekerState& state);

// Gain threshold (l^2 / mono_lower + l) / lambda. Pass lambda2 for the
// balanced rule, lambda'_2 for the scaled ones; callers must pick alpha
// strictly above the returned value.
double min_gain(const GameConstants& constants, double lambda);

// Certified decay rate nu with Vdot <= -nu V, computed as twice the minimum
// eigenvalue of [[mono_lower/n, -l/sqrt(n)], [-l/sqrt(n), alpha*lambda2 - l]].
// Throws ValidationError when that matrix is not positive definite.
double lyapunov_decay_rate(const GameConstants& constants, double alpha,
                           double lambda2, int n);

// Xi = I (mandated estimator start); Z defaults to the deterministic spread
// with row i = (i/n) * 1 when no initial matrix is supplied.
SeekerState initial_state(int n, std::optional<Eigen::MatrixXd> z0 = std::nullopt);

// Bundles the variant dispatch into a single state-derivative callable.
std::function<SeekerState(const SeekerState&)> make_field(
    const AlgorithmSpec& spec, const DiGraph& g, const GameInterface& game);

}  // namespace nesim
