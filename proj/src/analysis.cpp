#include "nesim/analysis.hpp"

#include <cmath>

#include "nesim/dynamics.hpp"

namespace nesim {

namespace {

// Below this, squared-error quantities sit on the double-precision plateau.
constexpr double kValueFloor = 1e-14;

Eigen::MatrixXd deviation(const Eigen::MatrixXd& Z, const Eigen::VectorXd& z_star) {
  return Z.rowwise() - z_star.transpose();
}

}  // namespace

std::vector<double> ne_error(const Trajectory& traj, const Eigen::VectorXd& z_star) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    out.push_back(deviation(s.Z, z_star).rowwise().norm().maxCoeff());
  }
  return out;
}

double consensus_error(const Eigen::MatrixXd& Z) {
  Eigen::RowVectorXd mean = Z.colwise().mean();
  return (Z.rowwise() - mean).rowwise().norm().maxCoeff();
}

std::vector<double> consensus_errors(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) out.push_back(consensus_error(s.Z));
  return out;
}

std::vector<double> lyapunov_values(const Trajectory& traj,
                                    const Eigen::VectorXd& z_star,
                                    const OrthogonalSplit& split) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    Eigen::MatrixXd tilde = deviation(s.Z, z_star);
    // zbar_1 = (M1^T x I) vec, zbar_2 = (M2^T x I) vec, taken blockwise.
    double v1 = (split.m1.transpose() * tilde).squaredNorm();
    double v2 = (split.m2.transpose() * tilde).squaredNorm();
    out.push_back(0.5 * (v1 + v2));
  }
  return out;
}

RateFit fit_exponential_rate(const std::vector<double>& times,
                             const std::vector<double>& values,
                             double tail_fraction) {
  if (times.size() != values.size()) {
    throw ValidationError("times/values length mismatch");
  }
  if (tail_fraction <= 0.0 || tail_fraction > 1.0) {
    throw ValidationError("tail_fraction must be in (0, 1]");
  }
  std::size_t start =
      times.size() - static_cast<std::size_t>(std::ceil(times.size() * tail_fraction));
  std::vector<double> t, logv;
  for (std::size_t i = start; i < times.size(); ++i) {
    if (values[i] > kValueFloor) {
      t.push_back(times[i]);
      logv.push_back(std::log(values[i]));
    }
  }
  if (t.size() < 5) {
    throw InsufficientData("fewer than 5 usable points for the rate fit");
  }
  const double n = static_cast<double>(t.size());
  double tm = 0, ym = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    tm += t[i];
    ym += logv[i];
  }
  tm /= n;
  ym /= n;
  double stt = 0, sty = 0, syy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (logv[i] - ym);
    syy += (logv[i] - ym) * (logv[i] - ym);
  }
  if (stt == 0.0) throw InsufficientData("degenerate time grid in rate fit");
  double slope = sty / stt;
  double r2 = syy == 0.0 ? 1.0 : (sty * sty) / (stt * syy);
  return {-slope, r2};
}

ConvergenceReport check_certificate(const Trajectory& traj,
                                    const GameConstants& constants, double alpha,
                                    double lambda2, int n,
                                    const Eigen::VectorXd& z_star,
                                    const OrthogonalSplit& split) {
  if (traj.states.size() < 2) {
    throw InsufficientData("trajectory too short for a certificate check");
  }
  double nu = lyapunov_decay_rate(constants, alpha, lambda2, n);
  std::vector<double> V = lyapunov_values(traj, z_star, split);
  const double slack = 1e-6;

  ConvergenceReport report;
  report.certified_rate = 0.5 * nu;
  report.lyapunov_monotone = true;
  for (std::size_t k = 0; k < V.size(); ++k) {
    double envelope = V[0] * std::exp(-nu * traj.times[k]) * (1.0 + slack) + 1e-30;
    if (V[k] > envelope) {
      throw CertificateViolated(traj.times[k],
                                "Lyapunov envelope violated at t = " +
                                    std::to_string(traj.times[k]));
    }
    // Monotonicity with roundoff slack; the squared-error plateau is exempt.
    if (k > 0 && V[k] > V[k - 1] * (1.0 + 1e-9) + 1e-24) {
      report.lyapunov_monotone = false;
    }
  }

  std::vector<double> errors = ne_error(traj, z_star);
  report.final_ne_error = errors.back();
  report.final_consensus_error = consensus_error(traj.states.back().Z);
  RateFit fit = fit_exponential_rate(traj.times, errors);
  report.fitted_rate = fit.rate;
  report.fit_quality = fit.fit_quality;
  if (traj.states.back().has_xi) {
    // Caller-facing estimator error is filled by the experiment layer, which
    // knows the oracle xi; default 0 here.
  }
  return report;
}

}  // namespace nesim
