#pragma once

#include <atomic>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hcensor/replicate.hpp"
#include "hcensor/scenario.hpp"
#include "hcensor/sim.hpp"

namespace hcensor {

// Fully resolved run description. Every run echoes this (defaults included)
// into <out>/manifest.txt; feeding that file back through `rerun` reproduces
// the output files byte for byte.
struct ExperimentConfig {
  std::string command;   // solve | steady | simulate | learn | preset
  std::string preset;    // preset name when command == "preset"
  std::string scenario_file;
  bool has_scenario = false;
  ScenarioModel scenario;

  std::vector<std::string> policies = {"opt"};  // opt bal ns sap abt q ratio:<r>
  long replications = 0;    // 0: command/preset default
  long horizon = 0;         // epochs (single hop) or slots (multi hop); 0: default
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  double tol = 1e-6;

  double sap_eta = 0.0;     // 0: decaying 1/(1 + delta k)
  double sap_delta = 1e-3;
  double abt_eta = 0.05;    // 0: decaying 1/(1 + delta k)
  double abt_delta = 1e-3;
  long dump_every = 0;
  bool trace = false;
  int initial_battery = -1;

  std::string topology;     // "tree:<n>" / "grid:<r>x<c>:<sink>"; empty: single hop
  double p_gen = 0.1;
};

void write_manifest(const ExperimentConfig& config, const std::string& path);
ExperimentConfig read_manifest(const std::string& path);

// Builds the live policy description for a token; `opt` runs the solver.
PolicySpec make_policy_spec(const std::string& token,
                            const ScenarioModel& scenario,
                            const ExperimentConfig& config);

// Picks the decaying-step rate for a learner by mean simulated value over a
// small grid (same master seed per candidate, so candidates share the
// environment draws). Ties go to the smaller rate.
struct StepTuneResult {
  double delta = 0.0;
  Aggregate score;
};

StepTuneResult tune_decaying_step(PolicySpec::Kind kind,
                                  const ScenarioModel& scenario, long horizon,
                                  long replications, std::uint64_t seed,
                                  const std::vector<double>& grid,
                                  const std::atomic<bool>* stop = nullptr);

const std::vector<double>& decaying_delta_grid();

// Command entry points. Each writes its CSVs under config.out_dir, logs a
// short summary, and returns the process exit code (0 ok, 2 config error,
// 3 convergence/degeneracy). A set stop flag flushes whatever finished.
int cmd_solve(const ExperimentConfig& config, std::ostream& log);
int cmd_steady(const ExperimentConfig& config, std::ostream& log);
int cmd_simulate(const ExperimentConfig& config, std::ostream& log,
                 const std::atomic<bool>* stop = nullptr);
int cmd_learn(const ExperimentConfig& config, std::ostream& log,
              const std::atomic<bool>* stop = nullptr);
int cmd_preset(const ExperimentConfig& config, std::ostream& log,
               const std::atomic<bool>* stop = nullptr);

// Dispatch on config.command; writes the manifest first.
int run_experiment(const ExperimentConfig& config, std::ostream& log,
                   const std::atomic<bool>* stop = nullptr);

}  // namespace hcensor
