#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nesim/digraph.hpp"
#include "nesim/game.hpp"
#include "nesim/integrator.hpp"

namespace nesim {

struct ConvergenceReport {
  double final_ne_error = 0.0;         // max_i ||z^i(T) - z*||
  double final_consensus_error = 0.0;  // max_i ||z^i(T) - mean row||
  double fitted_rate = 0.0;            // exponential exponent of the NE error
  double fit_quality = 0.0;            // R^2 of the log-linear fit
  double certified_rate = 0.0;         // nu/2 from the Lyapunov certificate
  bool lyapunov_monotone = false;
  double estimator_error_final = 0.0;  // ||diag(Xi) - xi||_inf, adaptive runs
};

// Per-snapshot max over agents of ||row i of Z - z*||_2.
std::vector<double> ne_error(const Trajectory& traj, const Eigen::VectorXd& z_star);

// Max over agents of ||row i of Z - row mean||_2.
double consensus_error(const Eigen::MatrixXd& Z);
std::vector<double> consensus_errors(const Trajectory& traj);

// V = 1/2 (||zbar_1||^2 + ||zbar_2||^2) per snapshot, computed through the
// M1/M2 coordinate change; equals 1/2 ||Z - 1 z*^T||_F^2 by orthogonality.
std::vector<double> lyapunov_values(const Trajectory& traj,
                                    const Eigen::VectorXd& z_star,
                                    const OrthogonalSplit& split);

struct RateFit {
  double rate;
  double fit_quality;  // R^2
};

// Least-squares line on (t, log value) over the trailing tail_fraction of
// the samples; values at or below the 1e-14 floor are excluded. Throws
// InsufficientData with fewer than 5 usable points.
RateFit fit_exponential_rate(const std::vector<double>& times,
                             const std::vector<double>& values,
                             double tail_fraction = 0.5);

// Verifies the pointwise envelope V(t_k) <= V(0) exp(-nu t_k) (1 + slack)
// with nu from lyapunov_decay_rate, then fills the full report. Throws
// CertificateViolated with the first offending time, InsufficientData on
// trajectories too short to fit.
ConvergenceReport check_certificate(const Trajectory& traj,
                                    const GameConstants& constants, double alpha,
                                    double lambda2, int n,
                                    const Eigen::VectorXd& z_star,
                                    const OrthogonalSplit& split);

}  // namespace nesim
