#include "nesim/digraph.hpp"

#include <cmath>
#include <vector>

namespace nesim {

DiGraph::DiGraph(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  const auto n = weights_.rows();
  if (n < 2 || weights_.cols() != n) {
    throw ValidationError("graph weight matrix must be square with n >= 2");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw ValidationError("graph weight matrix must have zero diagonal");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(weights_(i, j)) || weights_(i, j) < 0.0) {
        throw ValidationError("graph weights must be finite and nonnegative");
      }
    }
  }
}

Eigen::MatrixXd DiGraph::laplacian() const {
  Eigen::MatrixXd L = -weights_;
  L.diagonal() = weights_.rowwise().sum();
  return L;
}

bool DiGraph::strongly_connected() const {
  const int n = size();
  // BFS over the adjacency pattern, forward and reverse from node 0.
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        double w = transpose ? weights_(v, u) : weights_(u, v);
        if (w > 0.0 && !seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach(false) && reach(true);
}

bool DiGraph::weight_balanced(double tol) const {
  Eigen::VectorXd in = weights_.rowwise().sum();
  Eigen::VectorXd out = weights_.colwise().sum();
  return (in - out).cwiseAbs().maxCoeff() <= tol;
}

DiGraph DiGraph::ring(int n, double weight) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    // Node i+1 receives from node i.
    A((i + 1) % n, i) = weight;
  }
  return DiGraph(A);
}

DiGraph DiGraph::complete(int n, double weight) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Constant(n, n, weight);
  A.diagonal().setZero();
  return DiGraph(A);
}

OrthogonalSplit orthogonal_split(int n) {
  if (n < 2) throw ValidationError("orthogonal_split requires n >= 2");
  // Householder reflector H = I - 2 v v^T / (v^T v) mapping e1 to 1/sqrt(n);
  // columns 2..n of H span the complement of the all-ones direction.
  Eigen::VectorXd m1 = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  Eigen::VectorXd v = m1;
  v(0) -= 1.0;
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  double vtv = v.squaredNorm();
  if (vtv > 0.0) H -= (2.0 / vtv) * v * v.transpose();
  OrthogonalSplit split;
  split.m1 = m1;
  split.m2 = H.rightCols(n - 1);
  return split;
}

ConnectivityEigenvalues connectivity_eigenvalues(const Eigen::MatrixXd& L,
                                                 double tol) {
  const int n = static_cast<int>(L.rows());
  // Column sums of L equal the row sums of Sym(L) up to a factor of two, so a
  // nonzero column sum means the projected spectrum would mix with the
  // consensus mode and the lambda2 reading would be meaningless.
  if (L.colwise().sum().cwiseAbs().maxCoeff() > tol) {
    throw ValidationError(
        "Laplacian column sums are nonzero; graph is not weight-balanced");
  }
  OrthogonalSplit split = orthogonal_split(n);
  Eigen::MatrixXd sym = 0.5 * (L + L.transpose());
  Eigen::MatrixXd reduced =
      split.m2.transpose() * sym * split.m2;  // zero mode removed exactly
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolve on reduced Sym(L) failed");
  }
  double lambda2 = es.eigenvalues().minCoeff();
  double lambdaN = es.eigenvalues().maxCoeff();
  if (lambda2 < -tol) {
    throw ValidationError(
        "Sym(L) has a negative eigenvalue; graph is not weight-balanced");
  }
  if (lambda2 <= tol) {
    throw ValidationError("lambda2 <= tol; graph is not connected");
  }
  return {lambda2, lambdaN};
}

Eigen::VectorXd left_eigenvector(const Eigen::MatrixXd& L, double tol) {
  const int n = static_cast<int>(L.rows());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(L.transpose());
  lu.setThreshold(1e-10);
  if (lu.dimensionOfKernel() != 1) {
    throw ValidationError(
        "zero eigenvalue of L^T is not simple; graph is not strongly connected");
  }
  Eigen::VectorXd xi = lu.kernel().col(0);
  double total = xi.sum();
  if (std::abs(total) < 1e-14) {
    throw NumericalError("left eigenvector has vanishing component sum");
  }
  xi /= total;  // also fixes the sign so that the positive normalization holds
  if (xi.minCoeff() <= 0.0) {
    throw ValidationError("left eigenvector is not componentwise positive");
  }
  if ((xi.transpose() * L).cwiseAbs().maxCoeff() > std::max(tol, 1e-10)) {
    throw NumericalError("left eigenvector residual ||xi^T L|| above tolerance");
  }
  (void)n;
  return xi;
}

Eigen::MatrixXd scaled_laplacian(const Eigen::MatrixXd& L,
                                 const Eigen::VectorXd& xi, ScalingMode mode) {
  if (xi.minCoeff() <= 0.0) {
    throw ValidationError("scaling vector must be componentwise positive");
  }
  if (mode == ScalingMode::BalanceCorrected) {
    return xi.asDiagonal() * L;
  }
  return xi.cwiseInverse().asDiagonal() * L;
}

SpectralData analyze_graph(const DiGraph& g) {
  if (!g.strongly_connected()) {
    throw ValidationError("graph is not strongly connected");
  }
  SpectralData data;
  data.laplacian = g.laplacian();
  data.xi = left_eigenvector(data.laplacian);
  Eigen::MatrixXd scaled =
      scaled_laplacian(data.laplacian, data.xi, ScalingMode::BalanceCorrected);
  auto scaled_eigs = connectivity_eigenvalues(scaled);
  data.lambda2_scaled = scaled_eigs.lambda2;
  if (g.weight_balanced()) {
    auto eigs = connectivity_eigenvalues(data.laplacian);
    data.lambda2 = eigs.lambda2;
    data.lambdaN = eigs.lambdaN;
  } else {
    data.lambda2 = scaled_eigs.lambda2;
    data.lambdaN = scaled_eigs.lambdaN;
  }
  return data;
}

}  // namespace nesim
