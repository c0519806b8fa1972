#include <atomic>
#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcensor/errors.hpp"
#include "hcensor/experiment.hpp"
#include "hcensor/presets.hpp"

namespace {

std::atomic<bool> g_stop{false};

extern "C" void handle_interrupt(int) { g_stop.store(true); }

void add_common(CLI::App* sub, hcensor::ExperimentConfig& config) {
  sub->add_option("--seed", config.seed, "master seed");
  sub->add_option("--out", config.out_dir, "output directory");
  sub->add_option("--replications", config.replications,
                  "replication count (0: command default)");
  sub->add_option("--horizon", config.horizon,
                  "epochs, or slots for multi-hop runs (0: command default)");
}

void add_policy_flags(CLI::App* sub, hcensor::ExperimentConfig& config) {
  sub->add_option("--sap-eta", config.sap_eta,
                  "constant step for the value learner (0: decaying)");
  sub->add_option("--sap-delta", config.sap_delta,
                  "decaying-step rate for the value learner");
  sub->add_option("--abt-eta", config.abt_eta,
                  "constant step for the balance learner (0: decaying)");
  sub->add_option("--abt-delta", config.abt_delta,
                  "decaying-step rate for the balance learner");
  sub->add_option("--initial-battery", config.initial_battery,
                  "starting battery level (-1: full)");
}

}  // namespace

int main(int argc, char** argv) {
  using hcensor::ExperimentConfig;

  CLI::App app{"energy-harvesting censoring policies: solve, analyze, simulate"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string scenario_path;
  std::string manifest_path;
  std::string out_override;

  CLI::App* solve = app.add_subcommand("solve", "optimal threshold policy for a scenario");
  solve->add_option("--scenario", scenario_path, "scenario file")->required();
  solve->add_option("--tol", config.tol, "solver tolerance");
  add_common(solve, config);

  CLI::App* steady = app.add_subcommand(
      "steady", "steady-state value of the optimal/balanced/nonselective policies");
  steady->add_option("--scenario", scenario_path, "scenario file")->required();
  steady->add_option("--tol", config.tol, "solver tolerance");
  add_common(steady, config);

  CLI::App* simulate = app.add_subcommand("simulate", "replicated policy simulation");
  simulate->add_option("--scenario", scenario_path, "scenario file")->required();
  simulate->add_option("--policies", config.policies,
                       "comma list: opt bal ns sap abt q ratio:<r>")
      ->delimiter(',');
  simulate->add_option("--topology", config.topology,
                       "tree:<n> or grid:<r>x<c>:<sink>; empty: single hop");
  simulate->add_option("--p-gen", config.p_gen,
                       "per-slot message generation probability (multi-hop)");
  simulate->add_option("--tol", config.tol, "solver tolerance");
  add_policy_flags(simulate, config);
  add_common(simulate, config);

  CLI::App* learn = app.add_subcommand("learn", "single-run learner traces");
  learn->add_option("--scenario", scenario_path, "scenario file")->required();
  learn->add_option("--policies", config.policies, "comma list: sap abt q")
      ->delimiter(',');
  learn->add_option("--dump-every", config.dump_every,
                    "dump the threshold vector every N epochs");
  add_policy_flags(learn, config);
  add_common(learn, config);

  CLI::App* preset = app.add_subcommand("preset", "bundled experiment (no name: list)");
  preset->add_option("name", config.preset, "preset name");
  preset->add_option("--tol", config.tol, "solver tolerance");
  add_policy_flags(preset, config);
  add_common(preset, config);

  CLI::App* rerun = app.add_subcommand("rerun", "re-run a manifest exactly");
  rerun->add_option("manifest", manifest_path, "manifest file")->required();
  CLI::Option* rerun_out =
      rerun->add_option("--out", out_override, "override the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::signal(SIGINT, handle_interrupt);

  try {
    if (rerun->parsed()) {
      config = hcensor::read_manifest(manifest_path);
      if (*rerun_out) config.out_dir = out_override;
    } else if (preset->parsed()) {
      config.command = "preset";
      if (config.preset.empty()) {
        for (const hcensor::PresetInfo& info : hcensor::preset_list())
          std::cout << info.name << "\n    " << info.summary << "\n";
        return 0;
      }
    } else {
      config.command = solve->parsed()      ? "solve"
                       : steady->parsed()   ? "steady"
                       : simulate->parsed() ? "simulate"
                                            : "learn";
      config.scenario = hcensor::load_scenario_file(scenario_path);
      config.scenario_file = scenario_path;
      config.has_scenario = true;
    }
    return hcensor::run_experiment(config, std::cout, &g_stop);
  } catch (const hcensor::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
