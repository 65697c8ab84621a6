#pragma once

#include <random>

#include "nesim/digraph.hpp"
#include "nesim/game.hpp"

namespace nesim::testing {

// Two-player game with pseudogradient Jacobian [[2,1],[1,2]] and offset
// (-2,-4); equilibrium (0, 2), mono_lower = 1, lip_F = 3, lip_extF = sqrt(5).
inline QuadraticGame two_player_game() {
  Eigen::MatrixXd Q1(2, 2), Q2(2, 2);
  Q1 << 2, 1, 1, 0;
  Q2 << 0, 1, 1, 2;
  Eigen::VectorXd b1(2), b2(2);
  b1 << -2, 0;
  b2 << 0, -4;
  return QuadraticGame({Q1, Q2}, {b1, b2});
}

// Three-player game with Jacobian [[4,1,1],[1,4,1],[1,1,4]] and offset
// (-4,-8,-12); mono_lower = 3, lip_F = 6.
inline QuadraticGame three_player_game() {
  Eigen::MatrixXd Q1(3, 3), Q2(3, 3), Q3(3, 3);
  Q1 << 4, 1, 1, 1, 0, 0, 1, 0, 0;
  Q2 << 0, 1, 0, 1, 4, 1, 0, 1, 0;
  Q3 << 0, 0, 1, 0, 0, 1, 1, 1, 4;
  Eigen::VectorXd b1(3), b2(3), b3(3);
  b1 << -4, 0, 0;
  b2 << 0, -8, 0;
  b3 << 0, 0, -12;
  return QuadraticGame({Q1, Q2, Q3}, {b1, b2, b3});
}

// Decoupled game with Q_i = 2 e_i e_i^T, b_i = -2 c_i e_i; equilibrium c.
inline QuadraticGame decoupled_game(const Eigen::VectorXd& c) {
  const int n = static_cast<int>(c.size());
  std::vector<Eigen::MatrixXd> Q;
  std::vector<Eigen::VectorXd> b;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd Qi = Eigen::MatrixXd::Zero(n, n);
    Qi(i, i) = 2.0;
    Eigen::VectorXd bi = Eigen::VectorXd::Zero(n);
    bi(i) = -2.0 * c(i);
    Q.push_back(Qi);
    b.push_back(bi);
  }
  return QuadraticGame(std::move(Q), std::move(b));
}

// a_12 = 2, a_21 = 1: strongly connected, unbalanced, xi = (1/3, 2/3).
inline DiGraph two_node_unbalanced() {
  Eigen::MatrixXd A(2, 2);
  A << 0, 2, 1, 0;
  return DiGraph(A);
}

inline DiGraph two_node_undirected() {
  Eigen::MatrixXd A(2, 2);
  A << 0, 1, 1, 0;
  return DiGraph(A);
}

// Directed ring backbone (strong connectivity guaranteed) plus extra edges
// with the given probability; weights uniform in [0.5, 1.5].
inline DiGraph random_strongly_connected(int n, unsigned seed,
                                         double extra_edge_prob = 0.5) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) A((i + 1) % n, i) = weight(rng);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || A(i, j) > 0.0) continue;
      if (coin(rng) < extra_edge_prob) A(i, j) = weight(rng);
    }
  }
  return DiGraph(A);
}

// Brute-force reachability oracle: boolean transitive closure of the
// adjacency pattern, independent of the BFS used by the library.
inline bool strongly_connected_oracle(const DiGraph& g) {
  const int n = g.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    reach[i][i] = 1;
    for (int j = 0; j < n; ++j) {
      if (g.weights()(i, j) > 0.0) reach[i][j] = 1;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!reach[i][j]) return false;
  return true;
}

// Stacked system matrix and offset for the balanced dynamics of a quadratic
// game, assembled entry-by-entry from the definitions: with x = vec of the
// rows z^1..z^N, dx/dt = A x + c where
//   A[(i,k),(j,l)] = -alpha * L(i,j) * [k == l] - [i == j][k == i] * Q_i(i,l)
//   c[(i,k)] = -[k == i] * b_i(i).
struct StackedLinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd c;
};

inline StackedLinearSystem stacked_balanced_system(const DiGraph& g,
                                                   const QuadraticGame& game,
                                                   double alpha) {
  const int n = g.size();
  Eigen::MatrixXd L = g.laplacian();
  StackedLinearSystem sys;
  sys.A = Eigen::MatrixXd::Zero(n * n, n * n);
  sys.c = Eigen::VectorXd::Zero(n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      int row = i * n + k;
      for (int j = 0; j < n; ++j) {
        sys.A(row, j * n + k) += -alpha * L(i, j);
      }
      if (k == i) {
        for (int l = 0; l < n; ++l) sys.A(row, i * n + l) += -game.Q(i)(i, l);
        sys.c(row) = -game.b(i)(i);
      }
    }
  }
  return sys;
}

}  // namespace nesim::testing
