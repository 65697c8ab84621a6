#include <CLI11.hpp>
#include <iostream>

#include "nesim/experiment.hpp"

namespace {

int exit_code(const nesim::Error& e) {
  switch (e.category()) {
    case nesim::ErrorCategory::Validation: return 2;
    case nesim::ErrorCategory::Numerical: return 3;
    case nesim::ErrorCategory::Io: return 4;
  }
  return 1;
}

void report_error(const char* category, const std::exception& e, bool quiet) {
  if (!quiet) std::cerr << "error: " << category << ": " << e.what() << "\n";
}

nesim::ExperimentConfig load_with_overrides(const std::string& config_path,
                                            const std::string& alpha_override,
                                            const std::string& out_override) {
  auto cfg = nesim::load_experiment_config(config_path);
  if (!alpha_override.empty()) cfg.alpha = nesim::AlphaSpec::parse(alpha_override);
  if (!out_override.empty()) cfg.output_dir = out_override;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed Nash equilibrium seeking simulator"};
  app.require_subcommand(1);

  std::string config_path, alpha_override, out_override;
  bool quiet = false;
  std::vector<double> sweep_alphas;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")->required();
    cmd->add_option("--alpha", alpha_override, "override alpha (<real> or auto:<m>)");
    cmd->add_option("--out", out_override, "override output directory");
    cmd->add_flag("--quiet", quiet, "suppress console output");
  };

  auto* run_cmd = app.add_subcommand("run", "integrate one experiment and write artifacts");
  add_common(run_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "run the experiment across several alphas");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--alphas", sweep_alphas, "gain values to sweep")
      ->required()
      ->delimiter(',');

  auto* inspect_cmd = app.add_subcommand("inspect",
                                         "print graph/game diagnostics without integrating");
  add_common(inspect_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = load_with_overrides(config_path, alpha_override, out_override);

    if (inspect_cmd->parsed()) {
      auto g = nesim::load_graph(cfg.graph_path);
      auto game = nesim::load_game(cfg.game_path);
      auto spectral = nesim::analyze_graph(g);
      auto constants = game.constants();
      auto z_star = game.nash_equilibrium();
      std::cout << "nodes = " << g.size() << "\n"
                << "strongly_connected = " << g.strongly_connected() << "\n"
                << "weight_balanced = " << g.weight_balanced() << "\n"
                << "lambda2 = " << spectral.lambda2 << "\n"
                << "lambdaN = " << spectral.lambdaN << "\n"
                << "lambda2_scaled = " << spectral.lambda2_scaled << "\n"
                << "xi =" ;
      for (int i = 0; i < spectral.xi.size(); ++i) std::cout << " " << spectral.xi(i);
      std::cout << "\nmono_lower = " << constants.mono_lower << "\n"
                << "lip_F = " << constants.lip_F << "\n"
                << "lip_extF = " << constants.lip_extF << "\n"
                << "l = " << constants.l() << "\n"
                << "min_gain_balanced = "
                << nesim::min_gain(constants, spectral.lambda2) << "\n"
                << "min_gain_scaled = "
                << nesim::min_gain(constants, spectral.lambda2_scaled) << "\n"
                << "z_star =";
      for (int i = 0; i < z_star.size(); ++i) std::cout << " " << z_star(i);
      std::cout << "\n";
      return 0;
    }

    if (run_cmd->parsed()) {
      auto result = nesim::run_experiment(cfg, quiet);
      nesim::write_run_artifacts(cfg, result);
      bool tol_requested = cfg.integration.stop_tol > 0.0;
      bool tol_met = result.trajectory.stop_reason == nesim::StopReason::Tolerance;
      return (tol_requested && !tol_met) ? 3 : 0;
    }

    // sweep
    auto rows = nesim::run_sweep(cfg, sweep_alphas, quiet);
    nesim::write_sweep_summary(cfg, rows);
    return 0;
  } catch (const nesim::Error& e) {
    report_error("nesim", e, quiet);
    return exit_code(e);
  } catch (const std::exception& e) {
    report_error("unexpected", e, quiet);
    return 1;
  }
}
