#include "nesim/experiment.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace nesim {

namespace {

[[noreturn]] void config_fail(const std::string& msg) {
  throw ValidationError("config: " + msg);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    config_fail("bad number for " + key + ": '" + s + "'");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void write_provenance(std::ostream& out, const ExperimentConfig& config,
                      const RunResult& r) {
  out << "# graph = " << config.graph_path.string() << "\n";
  out << "# game = " << config.game_path.string() << "\n";
  out << "# variant = " << to_string(config.variant) << "\n";
  out << "# scaling_mode = " << to_string(config.scaling_mode) << "\n";
  out << "# alpha = " << r.alpha_resolved << "\n";
  out << "# min_gain = " << r.min_gain_value << "\n";
  out << "# lambda = " << r.lambda << "\n";
  out << "# lambda2 = " << r.spectral.lambda2 << "\n";
  out << "# lambda2_scaled = " << r.spectral.lambda2_scaled << "\n";
  out << "# xi =";
  for (int i = 0; i < r.spectral.xi.size(); ++i) out << " " << r.spectral.xi(i);
  out << "\n";
  out << "# mono_lower = " << r.constants.mono_lower << "\n";
  out << "# lip_F = " << r.constants.lip_F << "\n";
  out << "# lip_extF = " << r.constants.lip_extF << "\n";
  out << "# z_star =";
  for (int i = 0; i < r.z_star.size(); ++i) out << " " << r.z_star(i);
  out << "\n";
  out << "# step = " << config.integration.step << "\n";
  out << "# horizon = " << config.integration.horizon << "\n";
  out << "# record_every = " << config.integration.record_every << "\n";
  out << "# stop_tol = " << config.integration.stop_tol << "\n";
}

}  // namespace

AlphaSpec AlphaSpec::parse(const std::string& text) {
  AlphaSpec spec;
  if (text.rfind("auto:", 0) == 0) {
    spec.is_auto = true;
    spec.margin = parse_real(text.substr(5), "alpha margin");
    if (spec.margin <= 1.0) config_fail("auto alpha margin must exceed 1");
  } else {
    spec.value = parse_real(text, "alpha");
    if (spec.value <= 0.0) config_fail("alpha must be positive");
  }
  return spec;
}

InitialZSpec InitialZSpec::parse(const std::string& text) {
  InitialZSpec spec;
  if (text == "default") {
    spec.kind = Kind::Default;
  } else if (text.rfind("seeded:", 0) == 0) {
    spec.kind = Kind::Seeded;
    spec.seed = static_cast<unsigned>(parse_real(text.substr(7), "initial_z seed"));
  } else {
    // Inline matrix: rows separated by ';', entries by whitespace or ','.
    spec.kind = Kind::Inline;
    std::vector<std::vector<double>> rows;
    std::istringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
      std::vector<double> vals;
      std::istringstream rs(row);
      std::string tok;
      while (std::getline(rs, tok, ',')) {
        std::istringstream ts(tok);
        std::string word;
        while (ts >> word) vals.push_back(parse_real(word, "initial_z"));
      }
      if (!vals.empty()) rows.push_back(vals);
    }
    if (rows.empty()) config_fail("empty inline initial_z");
    spec.matrix.resize(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) config_fail("ragged inline initial_z");
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        spec.matrix(i, j) = rows[i][j];
      }
    }
  }
  return spec;
}

Eigen::MatrixXd InitialZSpec::materialize(int n) const {
  switch (kind) {
    case Kind::Default:
      return initial_state(n).Z;
    case Kind::Seeded: {
      std::mt19937 rng(seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      Eigen::MatrixXd Z(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = dist(rng);
      return Z;
    }
    case Kind::Inline:
      if (matrix.rows() != n || matrix.cols() != n) {
        config_fail("inline initial_z must be n x n");
      }
      return matrix;
  }
  config_fail("unknown initial_z kind");
}

Variant parse_variant(const std::string& text) {
  if (text == "balanced") return Variant::Balanced;
  if (text == "nominal") return Variant::NominalUnbalanced;
  if (text == "adaptive") return Variant::Adaptive;
  config_fail("unknown variant '" + text + "' (balanced|nominal|adaptive)");
}

ScalingMode parse_scaling_mode(const std::string& text) {
  if (text == "balance_corrected") return ScalingMode::BalanceCorrected;
  if (text == "paper_literal") return ScalingMode::PaperLiteral;
  config_fail("unknown scaling_mode '" + text +
              "' (balance_corrected|paper_literal)");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Balanced: return "balanced";
    case Variant::NominalUnbalanced: return "nominal";
    case Variant::Adaptive: return "adaptive";
  }
  return "?";
}

std::string to_string(ScalingMode m) {
  return m == ScalingMode::BalanceCorrected ? "balance_corrected" : "paper_literal";
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;  // section markers
    auto eq = line.find('=');
    if (eq == std::string::npos) config_fail("expected 'key = value': " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  auto require = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) config_fail(std::string("missing key '") + key + "'");
    return it->second;
  };

  ExperimentConfig cfg;
  cfg.graph_path = resolve(require("graph"));
  cfg.game_path = resolve(require("game"));
  if (!std::filesystem::exists(cfg.graph_path)) {
    throw IoError("graph file not found: " + cfg.graph_path.string());
  }
  if (!std::filesystem::exists(cfg.game_path)) {
    throw IoError("game file not found: " + cfg.game_path.string());
  }
  cfg.variant = parse_variant(require("variant"));
  if (kv.count("scaling_mode")) cfg.scaling_mode = parse_scaling_mode(kv["scaling_mode"]);
  cfg.alpha = AlphaSpec::parse(require("alpha"));
  if (kv.count("step")) cfg.integration.step = parse_real(kv["step"], "step");
  cfg.integration.horizon = parse_real(require("horizon"), "horizon");
  if (kv.count("record_every")) {
    cfg.integration.record_every =
        static_cast<int>(parse_real(kv["record_every"], "record_every"));
  }
  if (kv.count("stop_tol")) cfg.integration.stop_tol = parse_real(kv["stop_tol"], "stop_tol");
  if (kv.count("out")) cfg.output_dir = resolve(kv["out"]);
  if (kv.count("initial_z")) cfg.initial_z = InitialZSpec::parse(kv["initial_z"]);
  return cfg;
}

RunResult run_experiment(const ExperimentConfig& config, bool quiet) {
  DiGraph g = load_graph(config.graph_path);
  QuadraticGame game = load_game(config.game_path);
  if (game.size() != g.size()) {
    throw ValidationError("game and graph sizes disagree");
  }
  if (!g.strongly_connected()) {
    throw ValidationError(
        "Assumption violated: the digraph must be strongly connected");
  }
  if (config.variant == Variant::Balanced && !g.weight_balanced()) {
    throw ValidationError(
        "Assumption violated: the balanced variant requires a weight-balanced "
        "digraph");
  }

  RunResult r;
  r.spectral = analyze_graph(g);
  r.constants = game.constants();
  r.z_star = game.nash_equilibrium();

  bool use_scaled = config.variant != Variant::Balanced;
  r.lambda = use_scaled ? r.spectral.lambda2_scaled : r.spectral.lambda2;
  if (use_scaled && config.scaling_mode == ScalingMode::PaperLiteral) {
    // No convergence certificate exists for this mode on unbalanced graphs;
    // the threshold is still reported against the corrected scaling.
  }
  r.min_gain_value = min_gain(r.constants, r.lambda);
  r.alpha_resolved =
      config.alpha.is_auto ? r.min_gain_value * config.alpha.margin : config.alpha.value;

  AlgorithmSpec spec;
  spec.variant = config.variant;
  spec.alpha = r.alpha_resolved;
  spec.scaling_mode = config.scaling_mode;
  if (config.variant == Variant::NominalUnbalanced) spec.xi = r.spectral.xi;

  SeekerState s0 = initial_state(g.size(), config.initial_z.materialize(g.size()));
  r.trajectory = integrate(spec, g, game, s0, config.integration, r.z_star);
  if (r.trajectory.stop_reason == StopReason::Error) {
    throw NumericalError("integration failed: " + r.trajectory.error_message);
  }

  OrthogonalSplit split = orthogonal_split(g.size());
  std::vector<double> errors = ne_error(r.trajectory, r.z_star);
  r.report.final_ne_error = errors.back();
  r.report.final_consensus_error = consensus_error(r.trajectory.states.back().Z);
  try {
    RateFit fit = fit_exponential_rate(r.trajectory.times, errors);
    r.report.fitted_rate = fit.rate;
    r.report.fit_quality = fit.fit_quality;
  } catch (const InsufficientData&) {
    r.report.fitted_rate = 0.0;
    r.report.fit_quality = 0.0;
  }
  if (config.variant == Variant::Adaptive) {
    r.report.estimator_error_final =
        (r.trajectory.states.back().Xi.diagonal() - r.spectral.xi)
            .cwiseAbs()
            .maxCoeff();
  }
  // The Lyapunov certificate applies to the geometry the theorems cover.
  bool certifiable = config.variant == Variant::Balanced ||
                     config.scaling_mode == ScalingMode::BalanceCorrected;
  if (certifiable && r.alpha_resolved > r.min_gain_value) {
    r.certificate_checked = true;
    try {
      ConvergenceReport cert = check_certificate(
          r.trajectory, r.constants, r.alpha_resolved, r.lambda, g.size(),
          r.z_star, split);
      r.report.certified_rate = cert.certified_rate;
      r.report.lyapunov_monotone = cert.lyapunov_monotone;
      r.certificate_passed = true;
    } catch (const CertificateViolated& e) {
      r.certificate_passed = false;
      r.certificate_detail = e.what();
    } catch (const InsufficientData& e) {
      r.certificate_checked = false;
      r.certificate_detail = e.what();
    }
  }

  if (!quiet) {
    std::cout << "alpha = " << r.alpha_resolved
              << " (threshold " << r.min_gain_value << ")\n"
              << "final NE error = " << r.report.final_ne_error << "\n"
              << "final consensus error = " << r.report.final_consensus_error
              << "\n";
  }
  return r;
}

void write_run_artifacts(const ExperimentConfig& config, const RunResult& r) {
  std::filesystem::create_directories(config.output_dir);
  const bool adaptive = config.variant == Variant::Adaptive;
  const int n = static_cast<int>(r.z_star.size());
  OrthogonalSplit split = orthogonal_split(n);
  std::vector<double> V = lyapunov_values(r.trajectory, r.z_star, split);
  std::vector<double> errors = ne_error(r.trajectory, r.z_star);

  auto csv = open_out(config.output_dir / "trajectory.csv");
  write_provenance(csv, config, r);
  csv << "t";
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) csv << ",z_" << i << "_" << j;
  if (adaptive) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) csv << ",xi_" << i << "_" << j;
  }
  csv << ",V,ne_error,consensus_error,estimator_error\n";
  for (std::size_t k = 0; k < r.trajectory.states.size(); ++k) {
    const auto& s = r.trajectory.states[k];
    csv << r.trajectory.times[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) csv << "," << s.Z(i, j);
    if (adaptive) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) csv << "," << s.Xi(i, j);
    }
    double est_err =
        adaptive ? (s.Xi.diagonal() - r.spectral.xi).cwiseAbs().maxCoeff() : 0.0;
    csv << "," << V[k] << "," << errors[k] << "," << consensus_error(s.Z) << ","
        << est_err << "\n";
  }

  auto rep = open_out(config.output_dir / "report.txt");
  write_provenance(rep, config, r);
  rep << "final_ne_error = " << r.report.final_ne_error << "\n"
      << "final_consensus_error = " << r.report.final_consensus_error << "\n"
      << "fitted_rate = " << r.report.fitted_rate << "\n"
      << "fit_quality = " << r.report.fit_quality << "\n"
      << "certified_rate = " << r.report.certified_rate << "\n"
      << "lyapunov_monotone = " << (r.report.lyapunov_monotone ? 1 : 0) << "\n"
      << "estimator_error_final = " << r.report.estimator_error_final << "\n"
      << "certificate_checked = " << (r.certificate_checked ? 1 : 0) << "\n"
      << "certificate_passed = " << (r.certificate_passed ? 1 : 0) << "\n"
      << "stop_reason = "
      << (r.trajectory.stop_reason == StopReason::Horizon
              ? "horizon"
              : r.trajectory.stop_reason == StopReason::Tolerance ? "tolerance"
                                                                  : "error")
      << "\n";
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                const std::vector<double>& alphas, bool quiet) {
  if (alphas.empty()) throw ValidationError("sweep needs at least one alpha");
  std::vector<SweepRow> rows;
  for (double a : alphas) {
    SweepRow row;
    row.alpha = a;
    ExperimentConfig local = config;
    local.alpha.is_auto = false;
    local.alpha.value = a;
    std::ostringstream sub;
    sub << "alpha_" << a;
    local.output_dir = config.output_dir / sub.str();
    try {
      row.result = run_experiment(local, quiet);
      write_run_artifacts(local, row.result);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_summary(const ExperimentConfig& config,
                         const std::vector<SweepRow>& rows) {
  std::filesystem::create_directories(config.output_dir);
  auto out = open_out(config.output_dir / "summary.csv");
  out << "# graph = " << config.graph_path.string() << "\n"
      << "# game = " << config.game_path.string() << "\n"
      << "# variant = " << to_string(config.variant) << "\n"
      << "alpha,ok,final_ne_error,final_consensus_error,fitted_rate,"
         "certificate_checked,certificate_passed,error\n";
  for (const auto& row : rows) {
    out << row.alpha << "," << (row.ok ? 1 : 0) << ",";
    if (row.ok) {
      out << row.result.report.final_ne_error << ","
          << row.result.report.final_consensus_error << ","
          << row.result.report.fitted_rate << ","
          << (row.result.certificate_checked ? 1 : 0) << ","
          << (row.result.certificate_passed ? 1 : 0) << ",";
    } else {
      out << ",,,,,";
    }
    std::string err = row.error;
    for (auto& c : err) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << err << "\n";
  }
}

}  // namespace nesim
