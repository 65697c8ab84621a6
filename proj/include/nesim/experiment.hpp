#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nesim/analysis.hpp"
#include "nesim/integrator.hpp"
#include "nesim/io.hpp"

namespace nesim {

// How alpha is resolved: an explicit value, or `auto:<margin>` meaning
// min_gain times margin with margin > 1.
struct AlphaSpec {
  bool is_auto = false;
  double value = 0.0;   // explicit alpha
  double margin = 0.0;  // auto margin

  static AlphaSpec parse(const std::string& text);
};

// How the initial Z is chosen: `default` (deterministic spread),
// `seeded:<k>` (uniform [-1,1] draw from a seeded generator), or an inline
// semicolon-separated matrix.
struct InitialZSpec {
  enum class Kind { Default, Seeded, Inline } kind = Kind::Default;
  unsigned seed = 0;
  Eigen::MatrixXd matrix;

  static InitialZSpec parse(const std::string& text);
  Eigen::MatrixXd materialize(int n) const;
};

struct ExperimentConfig {
  std::filesystem::path graph_path;
  std::filesystem::path game_path;
  Variant variant = Variant::Balanced;
  ScalingMode scaling_mode = ScalingMode::BalanceCorrected;
  AlphaSpec alpha;
  IntegrationConfig integration;
  std::filesystem::path output_dir = "out";
  InitialZSpec initial_z;
};

// Flat `key = value` config file; `#` comments. Relative graph/game paths
// resolve against the config file's directory.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

Variant parse_variant(const std::string& text);
ScalingMode parse_scaling_mode(const std::string& text);
std::string to_string(Variant v);
std::string to_string(ScalingMode m);

// Everything a single run produces, before/after writing to disk.
struct RunResult {
  double alpha_resolved = 0.0;
  double min_gain_value = 0.0;
  double lambda = 0.0;  // lambda2 or lambda'_2 actually used
  SpectralData spectral;
  GameConstants constants;
  Eigen::VectorXd z_star;
  Trajectory trajectory;
  ConvergenceReport report;
  bool certificate_checked = false;
  bool certificate_passed = false;
  std::string certificate_detail;
};

// Validates assumptions (strong connectivity, weight balance for the
// balanced variant, game monotonicity), resolves alpha, integrates, and
// analyzes. Throws ValidationError naming the violated assumption.
RunResult run_experiment(const ExperimentConfig& config, bool quiet = true);

// Writes trajectory.csv and report.txt (both with a provenance header of
// the resolved configuration) into config.output_dir.
void write_run_artifacts(const ExperimentConfig& config, const RunResult& result);

// One run per alpha; failures are recorded per row and do not abort the
// sweep. Writes summary.csv plus per-alpha subdirectories.
struct SweepRow {
  double alpha = 0.0;
  bool ok = false;
  std::string error;
  RunResult result;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                const std::vector<double>& alphas,
                                bool quiet = true);
void write_sweep_summary(const ExperimentConfig& config,
                         const std::vector<SweepRow>& rows);

}  // namespace nesim
