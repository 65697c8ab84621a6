#pragma once

#include <Eigen/Dense>

#include "nesim/errors.hpp"

namespace nesim {

// Absolute tolerance for structural checks (balance, kernel residuals).
inline constexpr double kStructuralTol = 1e-9;

// How the left eigenvector xi is used to rescale an unbalanced Laplacian.
// BalanceCorrected multiplies row i by xi_i, which makes the column sums of
// the scaled Laplacian vanish (1^T diag(xi) L = xi^T L = 0). PaperLiteral
// divides row i by xi_i instead; it is kept so the discrepancy between the
// two conventions can be demonstrated, but it does not balance the scaled
// graph in general (see README).
enum class ScalingMode { BalanceCorrected, PaperLiteral };

// Weighted directed communication topology. Entry (i, j) of the weight
// matrix is a_ij >= 0; a_ij > 0 means node i receives information from
// node j. Immutable after construction.
class DiGraph {
public:
  // Throws ValidationError on nonzero diagonal, negative weights, or n < 2.
  explicit DiGraph(Eigen::MatrixXd weights);

  int size() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }

  // In-degree Laplacian L = D_in - A. Rows sum to zero by construction.
  Eigen::MatrixXd laplacian() const;

  bool strongly_connected() const;
  bool weight_balanced(double tol = kStructuralTol) const;

  // Small named families used by tests and examples.
  static DiGraph ring(int n, double weight = 1.0);
  static DiGraph complete(int n, double weight = 1.0);

private:
  Eigen::MatrixXd weights_;
};

// Orthonormal split of R^n into span{1} and its complement.
// m1 = 1/sqrt(n); columns of m2 complete it to an orthonormal basis via a
// deterministic Householder construction.
struct OrthogonalSplit {
  Eigen::VectorXd m1;
  Eigen::MatrixXd m2;  // n x (n-1)
};

OrthogonalSplit orthogonal_split(int n);

struct ConnectivityEigenvalues {
  double lambda2;
  double lambdaN;
};

// Smallest-nonzero and largest eigenvalue of Sym(L) = (L + L^T)/2 for a
// weight-balanced strongly connected digraph. The known zero mode is removed
// structurally by projecting onto the M2 basis before the symmetric
// eigensolve. Throws ValidationError if Sym(L) is indefinite below -tol or
// if lambda2 <= tol.
ConnectivityEigenvalues connectivity_eigenvalues(const Eigen::MatrixXd& L,
                                                 double tol = kStructuralTol);

// Unique xi > 0 with xi^T L = 0 and xi^T 1 = 1, computed centrally from the
// null space of L^T. Throws ValidationError if the zero eigenvalue is not
// numerically simple (graph not strongly connected).
Eigen::VectorXd left_eigenvector(const Eigen::MatrixXd& L,
                                 double tol = kStructuralTol);

// diag(xi) * L (BalanceCorrected) or diag(1/xi) * L (PaperLiteral).
// Throws ValidationError on any xi_i <= 0.
Eigen::MatrixXd scaled_laplacian(const Eigen::MatrixXd& L,
                                 const Eigen::VectorXd& xi, ScalingMode mode);

// Every spectral quantity the convergence theorems consume, bundled.
struct SpectralData {
  Eigen::MatrixXd laplacian;
  double lambda2;        // of Sym(L), defined when the graph is balanced
  double lambdaN;        // of Sym(L)
  Eigen::VectorXd xi;    // positive, xi^T 1 = 1, xi^T L = 0
  double lambda2_scaled; // lambda'_2 of Sym(diag(xi) L)
};

// Requires strong connectivity. lambda2/lambdaN are filled from Sym(L) when
// the graph is weight-balanced and from the balance-corrected scaling
// otherwise (where only lambda2_scaled is meaningful for the theorems).
SpectralData analyze_graph(const DiGraph& g);

}  // namespace nesim
