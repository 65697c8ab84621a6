#include "nesim/game.hpp"

#include <cmath>

namespace nesim {

namespace {

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* what) {
  if (!m.allFinite()) throw ValidationError(std::string("non-finite ") + what);
}

}  // namespace

QuadraticGame::QuadraticGame(std::vector<Eigen::MatrixXd> Q,
                             std::vector<Eigen::VectorXd> b)
    : Q_(std::move(Q)), b_(std::move(b)) {
  const int n = static_cast<int>(Q_.size());
  if (n < 1 || b_.size() != Q_.size()) {
    throw ValidationError("game needs matching Q and b lists");
  }
  jacobian_.resize(n, n);
  offset_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (Q_[i].rows() != n || Q_[i].cols() != n || b_[i].size() != n) {
      throw ValidationError("game matrices must be n x n with length-n b");
    }
    require_finite(Q_[i], "Q");
    require_finite(b_[i], "b");
    if ((Q_[i] - Q_[i].transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw ValidationError("Q_" + std::to_string(i + 1) + " is not symmetric");
    }
    if (Q_[i](i, i) <= 0.0) {
      throw ValidationError("player " + std::to_string(i + 1) +
                            " lacks positive own-variable curvature");
    }
    jacobian_.row(i) = Q_[i].row(i);
    offset_(i) = b_[i](i);
  }
  Eigen::MatrixXd sym = 0.5 * (jacobian_ + jacobian_.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError("pseudogradient is not strongly monotone");
  }
}

double QuadraticGame::cost(int player, const Eigen::VectorXd& z) const {
  return 0.5 * z.dot(Q_[player] * z) + b_[player].dot(z);
}

double QuadraticGame::partial_gradient(int player, const Eigen::VectorXd& z) const {
  return Q_[player].row(player).dot(z) + b_[player](player);
}

GameConstants QuadraticGame::constants() const {
  GameConstants c{};
  Eigen::MatrixXd sym = 0.5 * (jacobian_ + jacobian_.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  c.mono_lower = es.eigenvalues().minCoeff();
  c.lip_F = jacobian_.jacobiSvd().singularValues().maxCoeff();
  // Components of the extended map depend on disjoint rows of Z, so the
  // worst row norm is the exact Lipschitz constant.
  c.lip_extF = jacobian_.rowwise().norm().maxCoeff();
  return c;
}

Eigen::VectorXd QuadraticGame::nash_equilibrium() const {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jacobian_);
  if (!lu.isInvertible()) {
    throw NumericalError("pseudogradient Jacobian is singular");
  }
  return lu.solve(-offset_);
}

Eigen::VectorXd pseudogradient(const GameInterface& game, const Eigen::VectorXd& z) {
  if (!z.allFinite()) throw ValidationError("non-finite strategy vector");
  const int n = game.size();
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out(i) = game.partial_gradient(i, z);
  return out;
}

Eigen::VectorXd extended_pseudogradient(const GameInterface& game,
                                        const Eigen::MatrixXd& Z) {
  if (!Z.allFinite()) throw ValidationError("non-finite estimate matrix");
  const int n = game.size();
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    out(i) = game.partial_gradient(i, Z.row(i).transpose());
  }
  return out;
}

double finite_difference_check(const GameInterface& game, const Eigen::VectorXd& z,
                               double h) {
  if (h <= 0.0) throw ValidationError("finite difference step must be positive");
  const int n = game.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd zp = z, zm = z;
    zp(i) += h;
    zm(i) -= h;
    double fd = (game.cost(i, zp) - game.cost(i, zm)) / (2.0 * h);
    double g = game.partial_gradient(i, z);
    double err = std::abs(fd - g);
    if (std::abs(g) > 1e-8) err /= std::abs(g);
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace nesim
