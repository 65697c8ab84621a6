#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nesim/errors.hpp"

namespace nesim {

// Regularity constants of the pseudogradient maps. mono_lower is the strong
// monotonicity modulus of F, lip_F its Lipschitz constant, lip_extF the
// Lipschitz constant of the extended pseudogradient.
struct GameConstants {
  double mono_lower;
  double lip_F;
  double lip_extF;

  double l() const { return std::max(lip_F, lip_extF); }
};

// Minimal game abstraction: per-player cost and the partial derivative of
// that cost with respect to the player's own decision, both evaluated at a
// full strategy (or estimate) vector.
class GameInterface {
public:
  virtual ~GameInterface() = default;
  virtual int size() const = 0;
  virtual double cost(int player, const Eigen::VectorXd& z) const = 0;
  virtual double partial_gradient(int player, const Eigen::VectorXd& z) const = 0;
};

// N-player game with cost J_i(z) = 1/2 z^T Q_i z + b_i^T z. All regularity
// constants and the equilibrium are exactly computable, which makes the gain
// thresholds sharp.
class QuadraticGame : public GameInterface {
public:
  // Validates symmetry of each Q_i, positivity of the own-variable curvature
  // (Q_i)_ii, and strong monotonicity of the pseudogradient.
  QuadraticGame(std::vector<Eigen::MatrixXd> Q, std::vector<Eigen::VectorXd> b);

  int size() const override { return static_cast<int>(Q_.size()); }
  double cost(int player, const Eigen::VectorXd& z) const override;
  double partial_gradient(int player, const Eigen::VectorXd& z) const override;

  const Eigen::MatrixXd& Q(int player) const { return Q_[player]; }
  const Eigen::VectorXd& b(int player) const { return b_[player]; }

  // Pseudogradient Jacobian: row i is row i of Q_i. F(z) = jacobian()*z + offset().
  const Eigen::MatrixXd& jacobian() const { return jacobian_; }
  const Eigen::VectorXd& offset() const { return offset_; }

  GameConstants constants() const;

  // Solves jacobian() * z = -offset(); the unique point with F(z) = 0.
  Eigen::VectorXd nash_equilibrium() const;

private:
  std::vector<Eigen::MatrixXd> Q_;
  std::vector<Eigen::VectorXd> b_;
  Eigen::MatrixXd jacobian_;
  Eigen::VectorXd offset_;
};

// Stacked own-partials at a common profile z.
Eigen::VectorXd pseudogradient(const GameInterface& game, const Eigen::VectorXd& z);

// Component i is player i's own-partial evaluated at row i of Z (each
// player's private estimate of the full profile).
Eigen::VectorXd extended_pseudogradient(const GameInterface& game,
                                        const Eigen::MatrixXd& Z);

// Worst relative (or, near zero gradients, absolute) mismatch between
// partial_gradient and a central finite difference of cost.
double finite_difference_check(const GameInterface& game, const Eigen::VectorXd& z,
                               double h = 1e-6);

}  // namespace nesim
