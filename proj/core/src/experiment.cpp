#include "hcensor/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "hcensor/csv.hpp"
#include "hcensor/errors.hpp"
#include "hcensor/multihop.hpp"
#include "hcensor/performance.hpp"
#include "hcensor/presets.hpp"
#include "hcensor/solve.hpp"
#include "hcensor/topology.hpp"

namespace hcensor {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

void ensure_out_dir(const std::string& dir) {
  if (dir.empty() || dir == ".") return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
}

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ',';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long resolved(long value, long fallback) { return value > 0 ? value : fallback; }

bool stopped(const std::atomic<bool>* stop) { return stop && stop->load(); }

double mean_frac_zero(const SimulationOutcome& out) {
  if (out.nodes.empty()) return 0.0;
  double sum = 0.0;
  for (const NodeStats& n : out.nodes) sum += n.frac_battery_zero;
  return sum / static_cast<double>(out.nodes.size());
}

long total_tx(const SimulationOutcome& out) {
  long sum = 0;
  for (const NodeStats& n : out.nodes) sum += n.tx_count;
  return sum;
}

long total_censor(const SimulationOutcome& out) {
  long sum = 0;
  for (const NodeStats& n : out.nodes) sum += n.censor_count;
  return sum;
}

bool is_learner(const std::string& token) {
  return token == "sap" || token == "abt" || token == "q";
}

// Runs one policy across replications; single- or multi-hop per config.
std::vector<SimulationOutcome> run_policy(const ExperimentConfig& config,
                                          const ScenarioModel& scenario,
                                          const std::string& token,
                                          const PolicySpec& spec, long horizon,
                                          long reps, std::uint64_t seed,
                                          const std::atomic<bool>* stop) {
  if (!config.topology.empty()) {
    if (token == "q")
      throw ConfigError("the tabular learner runs single-hop only");
    Topology topo = parse_topology(config.topology, config.seed);
    MultiHopOptions mo;
    mo.p_gen = config.p_gen;
    mo.initial_battery = config.initial_battery;
    return run_replications(
        reps, seed,
        [&](long, std::uint64_t s) {
          return run_multi_hop(topo, scenario, spec, horizon, s, mo);
        },
        stop);
  }
  const bool moving = !scenario.costs.harvest.stationary();
  SimOptions so;
  so.initial_battery = config.initial_battery;
  return run_replications(
      reps, seed,
      [&](long, std::uint64_t s) {
        return moving ? run_non_stationary(scenario, spec, horizon, s, so)
                      : run_single_hop(scenario, spec, horizon, s, so);
      },
      stop);
}

void write_policy_csv(const std::string& path, const SolveResult& solved) {
  CsvWriter csv(path, {"e", "mu", "w", "lambda"});
  for (size_t e = 0; e < solved.lambda.size(); ++e) {
    csv.row({static_cast<double>(e), solved.policy.mu[e], solved.policy.w[e],
             solved.lambda[e]});
  }
}

void write_replication_csv(const std::string& path,
                           const std::vector<SimulationOutcome>& outs) {
  CsvWriter csv(path, {"replication", "seed", "v_hat", "frac_battery_zero",
                       "tx_count", "censor_count"});
  for (size_t i = 0; i < outs.size(); ++i) {
    const SimulationOutcome& o = outs[i];
    csv.row_mixed({std::to_string(i), std::to_string(o.seed),
                   CsvWriter::format(o.v_hat),
                   CsvWriter::format(mean_frac_zero(o)),
                   std::to_string(total_tx(o)),
                   std::to_string(total_censor(o))});
  }
}

struct SweepPoint {
  double cbar0 = kNaN;
  double v_opt = kNaN;
  double v_bal = kNaN;
  double v_ns = kNaN;
};

SweepPoint analytic_point(const ScenarioModel& scenario, double tol,
                          std::ostream& log, StationaryResult* opt_stationary) {
  SweepPoint p;
  p.cbar0 = scenario.costs.censor_cost_mean();
  SolveOptions so;
  so.tol = tol;
  SolveResult solved = value_iteration(scenario, so);
  try {
    PerformanceResult perf = expected_performance(solved.policy, scenario);
    p.v_opt = perf.value;
    if (opt_stationary) *opt_stationary = perf.stationary;
  } catch (const DegenerateChain& e) {
    log << "warning: optimal-policy chain degenerate at cbar0="
        << CsvWriter::format(p.cbar0) << " (" << e.what() << ")\n";
  }
  try {
    p.v_bal = balanced_performance(scenario).value;
  } catch (const DegenerateChain& e) {
    log << "warning: balanced-policy chain degenerate at cbar0="
        << CsvWriter::format(p.cbar0) << " (" << e.what() << ")\n";
  }
  try {
    p.v_ns = nonselective_performance(scenario).value;
  } catch (const DegenerateChain& e) {
    log << "warning: nonselective chain degenerate at cbar0="
        << CsvWriter::format(p.cbar0) << " (" << e.what() << ")\n";
  }
  return p;
}

// ---- presets ----

int preset_thresholds(const ExperimentConfig& config, std::ostream& log) {
  for (int m_b : {5, 10, 15}) {
    ScenarioModel s = moderate_duty_scenario(m_b);
    SolveOptions so;
    so.tol = config.tol;
    SolveResult solved = value_iteration(s, so);
    std::string name = "policy_mb" + std::to_string(m_b) + ".csv";
    write_policy_csv(join_path(config.out_dir, name), solved);
    log << name << ": iterations=" << solved.iterations
        << " residual=" << CsvWriter::format(solved.residual) << "\n";
  }
  return 0;
}

int preset_battery_sizes(const ExperimentConfig& config, std::ostream& log) {
  for (int b : {20, 50, 100, 200}) {
    ScenarioModel s = moderate_duty_scenario(10, b);
    SolveOptions so;
    so.tol = config.tol;
    SolveResult solved = value_iteration(s, so);
    std::string name = "policy_B" + std::to_string(b) + ".csv";
    write_policy_csv(join_path(config.out_dir, name), solved);
    log << name << ": iterations=" << solved.iterations
        << " residual=" << CsvWriter::format(solved.residual) << "\n";
  }
  ScenarioModel s = moderate_duty_scenario(10);
  BalancedThreshold bt = balanced_threshold(s.costs, s.importance);
  CsvWriter csv(join_path(config.out_dir, "balanced.csv"), {"mu_bar", "rho"});
  csv.row({bt.mu_bar, bt.rho});
  log << "balanced.csv: mu_bar=" << CsvWriter::format(bt.mu_bar) << "\n";
  return 0;
}

int preset_value_sweep(const ExperimentConfig& config, std::ostream& log,
                       bool low_duty, const std::atomic<bool>* stop) {
  std::vector<double> grid = low_duty ? low_duty_mb_grid() : moderate_duty_mb_grid();
  CsvWriter csv(join_path(config.out_dir, "sweep.csv"),
                {"cbar0", "V_opt", "V_bal", "V_ns"});
  for (double m_b : grid) {
    if (stopped(stop)) {
      csv.flush();
      log << "interrupted; partial sweep flushed\n";
      return 130;
    }
    ScenarioModel s = low_duty ? low_duty_scenario(m_b) : moderate_duty_scenario(m_b);
    SweepPoint p = analytic_point(s, config.tol, log, nullptr);
    csv.row({p.cbar0, p.v_opt, p.v_bal, p.v_ns});
    csv.flush();
  }
  log << "sweep.csv: " << grid.size() << " points\n";
  return 0;
}

int preset_learner_sweep(const ExperimentConfig& config, std::ostream& log,
                         const std::atomic<bool>* stop) {
  const long reps = resolved(config.replications, 100);
  const long horizon = resolved(config.horizon, 40000);
  const std::vector<double> grid = burst_p_grid();
  CsvWriter csv(join_path(config.out_dir, "sweep.csv"),
                {"p", "cbar0", "policy", "delta", "mean", "std", "count"});
  for (size_t i = 0; i < grid.size(); ++i) {
    const double p = grid[i];
    ScenarioModel s = burst_scenario(p);
    const double cbar0 = s.costs.censor_cost_mean();
    const std::uint64_t point_seed = derive_seed(config.seed, 0, 1000 + static_cast<int>(i));

    SolveOptions so;
    so.tol = config.tol;
    SolveResult solved = value_iteration(s, so);
    auto emit = [&](const std::string& policy, double delta, const Aggregate& a) {
      csv.row_mixed({CsvWriter::format(p), CsvWriter::format(cbar0), policy,
                     CsvWriter::format(delta), CsvWriter::format(a.mean),
                     CsvWriter::format(a.stddev), std::to_string(a.count)});
      csv.flush();
    };
    auto simulate = [&](const PolicySpec& spec) {
      auto outs = run_replications(
          reps, point_seed,
          [&](long, std::uint64_t seed) {
            return run_single_hop(s, spec, horizon, seed);
          },
          stop);
      return aggregate(collect(outs, [](const SimulationOutcome& o) { return o.v_hat; }));
    };

    emit("opt", kNaN, simulate(PolicySpec::fixed_policy(solved.policy)));
    if (stopped(stop)) break;
    StepTuneResult sap = tune_decaying_step(PolicySpec::Kind::sap, s, horizon,
                                            reps, point_seed,
                                            decaying_delta_grid(), stop);
    if (stopped(stop)) break;
    emit("sap", sap.delta, sap.score);
    StepTuneResult abt = tune_decaying_step(PolicySpec::Kind::abt, s, horizon,
                                            reps, point_seed,
                                            decaying_delta_grid(), stop);
    if (stopped(stop)) break;
    emit("abt", abt.delta, abt.score);
    emit("ns", kNaN, simulate(PolicySpec::nonselective()));
    if (stopped(stop)) break;
    log << "p=" << CsvWriter::format(p) << " done (sap delta="
        << CsvWriter::format(sap.delta) << ")\n";
  }
  if (stopped(stop)) {
    log << "interrupted; partial sweep flushed\n";
    return 130;
  }
  return 0;
}

int preset_learning_curves(const ExperimentConfig& config, std::ostream& log,
                           const std::atomic<bool>* stop) {
  const long reps = resolved(config.replications, 100);
  ScenarioModel s = burst_scenario(0.3);
  SolveOptions so;
  so.tol = config.tol;
  SolveResult solved = value_iteration(s, so);

  CsvWriter csv(join_path(config.out_dir, "curves.csv"),
                {"horizon", "policy", "mean", "std", "count"});
  const long horizons[] = {1000, 10000, 100000};
  for (size_t hi = 0; hi < 3; ++hi) {
    const long horizon = horizons[hi];
    const std::uint64_t seed = derive_seed(config.seed, 0, 2000 + static_cast<int>(hi));
    struct Entry {
      const char* name;
      PolicySpec spec;
    };
    const Entry entries[] = {
        {"opt", PolicySpec::fixed_policy(solved.policy)},
        {"sap", PolicySpec::sap(StepSchedule::decaying(config.sap_delta))},
        {"abt", PolicySpec::abt(StepSchedule::decaying(config.abt_delta))},
        {"q", PolicySpec::qlearn()},
    };
    for (const Entry& entry : entries) {
      auto outs = run_replications(
          reps, seed,
          [&](long, std::uint64_t rep_seed) {
            return run_single_hop(s, entry.spec, horizon, rep_seed);
          },
          stop);
      if (stopped(stop)) {
        csv.flush();
        log << "interrupted; partial curves flushed\n";
        return 130;
      }
      Aggregate a = aggregate(collect(outs, [](const SimulationOutcome& o) { return o.v_hat; }));
      csv.row_mixed({std::to_string(horizon), entry.name,
                     CsvWriter::format(a.mean), CsvWriter::format(a.stddev),
                     std::to_string(a.count)});
      csv.flush();
    }
    log << "horizon " << horizon << " done\n";
  }
  return 0;
}

int preset_threshold_bands(const ExperimentConfig& config, std::ostream& log,
                           const std::atomic<bool>* stop) {
  const long reps = resolved(config.replications, 100);
  const long horizon = resolved(config.horizon, 40000);
  ScenarioModel s = burst_scenario(0.3);
  SolveOptions so;
  so.tol = config.tol;
  SolveResult solved = value_iteration(s, so);

  PolicySpec spec = PolicySpec::sap(StepSchedule::decaying(config.sap_delta));
  SimOptions sim;
  sim.dump_mu_every = horizon;  // final snapshot only
  auto outs = run_replications(
      reps, config.seed,
      [&](long, std::uint64_t seed) {
        return run_single_hop(s, spec, horizon, seed, sim);
      },
      stop);
  if (stopped(stop)) {
    log << "interrupted before the band could be assembled\n";
    return 130;
  }

  CsvWriter csv(join_path(config.out_dir, "bands.csv"),
                {"e", "mu_opt", "mu_mean", "mu_std"});
  for (int e = 0; e <= s.battery; ++e) {
    std::vector<double> taps;
    taps.reserve(outs.size());
    for (const SimulationOutcome& o : outs) {
      if (!o.mu_dumps.empty())
        taps.push_back(o.mu_dumps.back().second[static_cast<size_t>(e)]);
    }
    Aggregate a = aggregate(taps);
    csv.row({static_cast<double>(e), solved.policy.mu[static_cast<size_t>(e)],
             a.mean, a.stddev});
  }
  log << "bands.csv: " << reps << " replications\n";
  return 0;
}

int preset_nonstationary(const ExperimentConfig& config, std::ostream& log,
                         const std::atomic<bool>* stop) {
  const long reps = resolved(config.replications, 200);
  const long horizon = resolved(config.horizon, 40000);
  ScenarioModel s = alternating_scenario();

  struct Entry {
    const char* name;
    PolicySpec spec;
  };
  const Entry entries[] = {
      {"sap", PolicySpec::sap(StepSchedule::constant(0.5))},
      {"abt", PolicySpec::abt(StepSchedule::constant(0.05))},
      {"ns", PolicySpec::nonselective()},
  };
  CsvWriter csv(join_path(config.out_dir, "table.csv"),
                {"policy", "mean", "std", "count", "frac_zero_mean",
                 "frac_zero_std"});
  for (const Entry& entry : entries) {
    auto outs = run_replications(
        reps, config.seed,
        [&](long, std::uint64_t seed) {
          return run_non_stationary(s, entry.spec, horizon, seed);
        },
        stop);
    if (stopped(stop)) {
      csv.flush();
      log << "interrupted; partial table flushed\n";
      return 130;
    }
    Aggregate v = aggregate(collect(outs, [](const SimulationOutcome& o) { return o.v_hat; }));
    Aggregate z = aggregate(collect(outs, mean_frac_zero));
    csv.row_mixed({entry.name, CsvWriter::format(v.mean),
                   CsvWriter::format(v.stddev), std::to_string(v.count),
                   CsvWriter::format(z.mean), CsvWriter::format(z.stddev)});
    csv.flush();
    log << entry.name << ": mean=" << CsvWriter::format(v.mean) << "\n";
  }
  return 0;
}

int preset_multihop(const ExperimentConfig& config, std::ostream& log,
                    const std::atomic<bool>* stop) {
  const long reps = resolved(config.replications, 200);
  const long horizon = resolved(config.horizon, 40000);
  CsvWriter csv(join_path(config.out_dir, "multihop.csv"),
                {"topology", "p_h", "policy", "mean", "std", "count"});
  const auto cases = multihop_cases();
  for (size_t i = 0; i < cases.size(); ++i) {
    const MultiHopCase& c = cases[i];
    Topology topo = parse_topology(c.name, c.layout_seed);
    ScenarioModel s = multihop_scenario(c.p_h);
    const std::uint64_t case_seed = derive_seed(config.seed, 0, 3000 + static_cast<int>(i));

    struct Entry {
      const char* name;
      PolicySpec spec;
    };
    const Entry entries[] = {
        {"sap", PolicySpec::sap(StepSchedule::decaying(config.sap_delta))},
        {"abt", PolicySpec::abt(StepSchedule::decaying(config.abt_delta))},
        {"ns", PolicySpec::nonselective()},
    };
    MultiHopOptions mo;
    mo.p_gen = config.p_gen;
    for (const Entry& entry : entries) {
      auto outs = run_replications(
          reps, case_seed,
          [&](long, std::uint64_t seed) {
            return run_multi_hop(topo, s, entry.spec, horizon, seed, mo);
          },
          stop);
      if (stopped(stop)) {
        csv.flush();
        log << "interrupted; partial results flushed\n";
        return 130;
      }
      Aggregate a = aggregate(collect(outs, [](const SimulationOutcome& o) { return o.v_hat; }));
      csv.row_mixed({c.name, CsvWriter::format(c.p_h), entry.name,
                     CsvWriter::format(a.mean), CsvWriter::format(a.stddev),
                     std::to_string(a.count)});
      csv.flush();
    }
    log << c.name << " p=" << CsvWriter::format(c.p_h) << " done\n";
  }
  return 0;
}

}  // namespace

void write_manifest(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write manifest '" + path + "'");
  out << "command = " << config.command << "\n";
  if (!config.preset.empty()) out << "preset = " << config.preset << "\n";
  out << "policies = " << join_tokens(config.policies) << "\n";
  out << "replications = " << config.replications << "\n";
  out << "horizon = " << config.horizon << "\n";
  out << "seed = " << config.seed << "\n";
  out << "out = " << config.out_dir << "\n";
  out << "tol = " << num17(config.tol) << "\n";
  out << "sap.eta = " << num17(config.sap_eta) << "\n";
  out << "sap.delta = " << num17(config.sap_delta) << "\n";
  out << "abt.eta = " << num17(config.abt_eta) << "\n";
  out << "abt.delta = " << num17(config.abt_delta) << "\n";
  out << "dump.every = " << config.dump_every << "\n";
  out << "trace = " << (config.trace ? 1 : 0) << "\n";
  out << "initial.battery = " << config.initial_battery << "\n";
  out << "topology = " << config.topology << "\n";
  out << "p.gen = " << num17(config.p_gen) << "\n";
  if (config.has_scenario) {
    for (const auto& [key, value] : scenario_keys(config.scenario))
      out << "scenario." << key << " = " << value << "\n";
  }
  if (!out) throw ConfigError("failed writing manifest '" + path + "'");
}

ExperimentConfig read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read manifest '" + path + "'");
  ExperimentConfig config;
  config.policies.clear();
  std::string scenario_text;
  std::string line;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    size_t a = s.find_first_not_of(ws);
    if (a == std::string::npos) return std::string();
    size_t b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
  };
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError("manifest line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    try {
      if (key == "command") config.command = value;
      else if (key == "preset") config.preset = value;
      else if (key == "policies") config.policies = split_tokens(value);
      else if (key == "replications") config.replications = std::stol(value);
      else if (key == "horizon") config.horizon = std::stol(value);
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "out") config.out_dir = value;
      else if (key == "tol") config.tol = std::stod(value);
      else if (key == "sap.eta") config.sap_eta = std::stod(value);
      else if (key == "sap.delta") config.sap_delta = std::stod(value);
      else if (key == "abt.eta") config.abt_eta = std::stod(value);
      else if (key == "abt.delta") config.abt_delta = std::stod(value);
      else if (key == "dump.every") config.dump_every = std::stol(value);
      else if (key == "trace") config.trace = std::stol(value) != 0;
      else if (key == "initial.battery") config.initial_battery = std::stoi(value);
      else if (key == "topology") config.topology = value;
      else if (key == "p.gen") config.p_gen = std::stod(value);
      else if (key.rfind("scenario.", 0) == 0)
        scenario_text += key.substr(9) + " = " + value + "\n";
      else
        throw ConfigError("manifest: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError("manifest: bad value for '" + key + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError("manifest: value out of range for '" + key + "'");
    }
  }
  if (!scenario_text.empty()) {
    config.scenario = parse_scenario_text(scenario_text);
    config.has_scenario = true;
  }
  if (config.policies.empty()) config.policies = {"opt"};
  return config;
}

PolicySpec make_policy_spec(const std::string& token,
                            const ScenarioModel& scenario,
                            const ExperimentConfig& config) {
  if (token == "opt") {
    SolveOptions so;
    so.tol = config.tol;
    return PolicySpec::fixed_policy(value_iteration(scenario, so).policy);
  }
  if (token == "bal") {
    BalancedThreshold bt = balanced_threshold(scenario.costs, scenario.importance);
    return PolicySpec::fixed_policy(constant_ratio_policy(
        bt.mu_bar, success_probability(scenario.costs, scenario.battery)));
  }
  if (token == "ns") return PolicySpec::nonselective();
  if (token == "sap") {
    return PolicySpec::sap(config.sap_eta > 0
                               ? StepSchedule::constant(config.sap_eta)
                               : StepSchedule::decaying(config.sap_delta));
  }
  if (token == "abt") {
    return PolicySpec::abt(config.abt_eta > 0
                               ? StepSchedule::constant(config.abt_eta)
                               : StepSchedule::decaying(config.abt_delta));
  }
  if (token == "q") return PolicySpec::qlearn();
  if (token.rfind("ratio:", 0) == 0) {
    double ratio = 0.0;
    try {
      ratio = std::stod(token.substr(6));
    } catch (...) {
      throw ConfigError("bad ratio policy '" + token + "'");
    }
    if (ratio < 0) throw ConfigError("ratio policy needs a nonnegative ratio");
    return PolicySpec::fixed_policy(constant_ratio_policy(
        ratio, success_probability(scenario.costs, scenario.battery)));
  }
  throw ConfigError("unknown policy '" + token + "'");
}

StepTuneResult tune_decaying_step(PolicySpec::Kind kind,
                                  const ScenarioModel& scenario, long horizon,
                                  long replications, std::uint64_t seed,
                                  const std::vector<double>& grid,
                                  const std::atomic<bool>* stop) {
  if (grid.empty()) throw ConfigError("step tuning needs a nonempty grid");
  if (kind != PolicySpec::Kind::sap && kind != PolicySpec::Kind::abt)
    throw ConfigError("step tuning applies to the threshold learners only");
  StepTuneResult best;
  best.delta = grid.front();
  bool found = false;
  for (double delta : grid) {
    PolicySpec spec = kind == PolicySpec::Kind::sap
                          ? PolicySpec::sap(StepSchedule::decaying(delta))
                          : PolicySpec::abt(StepSchedule::decaying(delta));
    auto outs = run_replications(
        replications, seed,
        [&](long, std::uint64_t s) {
          return run_single_hop(scenario, spec, horizon, s);
        },
        stop);
    if (static_cast<long>(outs.size()) < replications) break;
    Aggregate a = aggregate(collect(outs, [](const SimulationOutcome& o) { return o.v_hat; }));
    if (!found || a.mean > best.score.mean) {
      best.delta = delta;
      best.score = a;
      found = true;
    }
  }
  return best;
}

const std::vector<double>& decaying_delta_grid() {
  static const std::vector<double> grid = {3e-4, 1e-3, 3e-3, 1e-2, 3e-2};
  return grid;
}

int cmd_solve(const ExperimentConfig& config, std::ostream& log) {
  if (!config.has_scenario) throw ConfigError("solve needs a scenario");
  SolveOptions so;
  so.tol = config.tol;
  SolveResult solved = value_iteration(config.scenario, so);
  write_policy_csv(join_path(config.out_dir, "policy.csv"), solved);
  log << "policy.csv: iterations=" << solved.iterations
      << " residual=" << CsvWriter::format(solved.residual) << "\n";
  return 0;
}

int cmd_steady(const ExperimentConfig& config, std::ostream& log) {
  if (!config.has_scenario) throw ConfigError("steady needs a scenario");
  StationaryResult stationary;
  SweepPoint p = analytic_point(config.scenario, config.tol, log, &stationary);
  {
    CsvWriter csv(join_path(config.out_dir, "sweep.csv"),
                  {"cbar0", "V_opt", "V_bal", "V_ns"});
    csv.row({p.cbar0, p.v_opt, p.v_bal, p.v_ns});
  }
  if (!stationary.phi.empty()) {
    CsvWriter csv(join_path(config.out_dir, "stationary.csv"), {"e", "phi"});
    for (size_t e = 0; e < stationary.phi.size(); ++e)
      csv.row({static_cast<double>(e), stationary.phi[e]});
    log << "stationary.csv: method="
        << (stationary.method == StationaryMethod::direct_solve
                ? "direct_solve"
                : "power_iteration")
        << " residual=" << CsvWriter::format(stationary.residual) << "\n";
  }
  log << "sweep.csv: cbar0=" << CsvWriter::format(p.cbar0)
      << " V_opt=" << CsvWriter::format(p.v_opt)
      << " V_bal=" << CsvWriter::format(p.v_bal)
      << " V_ns=" << CsvWriter::format(p.v_ns) << "\n";
  return 0;
}

int cmd_simulate(const ExperimentConfig& config, std::ostream& log,
                 const std::atomic<bool>* stop) {
  if (!config.has_scenario) throw ConfigError("simulate needs a scenario");
  if (config.policies.empty()) throw ConfigError("simulate needs policies");
  const long reps = resolved(config.replications, 100);
  const long horizon = resolved(config.horizon, 40000);

  CsvWriter agg(join_path(config.out_dir, "aggregate.csv"),
                {"policy", "mean", "std", "count", "frac_zero_mean"});
  bool interrupted = false;
  for (const std::string& token : config.policies) {
    PolicySpec spec = make_policy_spec(token, config.scenario, config);
    auto outs = run_policy(config, config.scenario, token, spec, horizon, reps,
                           config.seed, stop);
    write_replication_csv(
        join_path(config.out_dir, "replications_" + token + ".csv"), outs);
    if (!outs.empty()) {
      Aggregate v = aggregate(collect(outs, [](const SimulationOutcome& o) { return o.v_hat; }));
      Aggregate z = aggregate(collect(outs, mean_frac_zero));
      agg.row_mixed({token, CsvWriter::format(v.mean),
                     CsvWriter::format(v.stddev), std::to_string(v.count),
                     CsvWriter::format(z.mean)});
      agg.flush();
      log << token << ": mean=" << CsvWriter::format(v.mean)
          << " std=" << CsvWriter::format(v.stddev) << " count=" << v.count
          << "\n";
    }
    if (stopped(stop)) {
      interrupted = true;
      log << "interrupted; partial results flushed\n";
      break;
    }
  }
  return interrupted ? 130 : 0;
}

int cmd_learn(const ExperimentConfig& config, std::ostream& log,
              const std::atomic<bool>* stop) {
  if (!config.has_scenario) throw ConfigError("learn needs a scenario");
  if (!config.topology.empty())
    throw ConfigError("learn records single-hop traces only");
  const long horizon = resolved(config.horizon, 40000);
  for (const std::string& token : config.policies) {
    if (!is_learner(token))
      throw ConfigError("learn expects learner policies (sap, abt, q); got '" +
                        token + "'");
    if (stopped(stop)) {
      log << "interrupted\n";
      return 130;
    }
    PolicySpec spec = make_policy_spec(token, config.scenario, config);
    SimOptions so;
    so.initial_battery = config.initial_battery;
    so.record_learner_trace = true;
    so.dump_mu_every = config.dump_every;
    SimulationOutcome out = run_single_hop(
        config.scenario, spec, horizon, derive_seed(config.seed, 0, 0), so);
    {
      CsvWriter csv(join_path(config.out_dir, "trace_" + token + ".csv"),
                    {"k", "e", "x", "a", "eta", "mu_at_e"});
      for (const LearnerTraceRow& r : out.learner_trace) {
        csv.row({static_cast<double>(r.k), static_cast<double>(r.e), r.x,
                 static_cast<double>(r.action), r.eta, r.mu_at_e});
      }
    }
    if (!out.mu_dumps.empty()) {
      CsvWriter csv(join_path(config.out_dir, "mu_" + token + ".csv"),
                    {"k", "e", "mu"});
      for (const auto& [k, mu] : out.mu_dumps) {
        for (size_t e = 0; e < mu.size(); ++e)
          csv.row({static_cast<double>(k), static_cast<double>(e), mu[e]});
      }
    }
    log << token << ": v_hat=" << CsvWriter::format(out.v_hat) << " epochs="
        << out.epochs << "\n";
  }
  return 0;
}

int cmd_preset(const ExperimentConfig& config, std::ostream& log,
               const std::atomic<bool>* stop) {
  const std::string& name = config.preset;
  if (name == "thresholds") return preset_thresholds(config, log);
  if (name == "battery-sizes") return preset_battery_sizes(config, log);
  if (name == "value-sweep") return preset_value_sweep(config, log, false, stop);
  if (name == "value-sweep-lowduty") return preset_value_sweep(config, log, true, stop);
  if (name == "learner-sweep") return preset_learner_sweep(config, log, stop);
  if (name == "learning-curves") return preset_learning_curves(config, log, stop);
  if (name == "threshold-bands") return preset_threshold_bands(config, log, stop);
  if (name == "nonstationary") return preset_nonstationary(config, log, stop);
  if (name == "multihop") return preset_multihop(config, log, stop);
  std::string known;
  for (const PresetInfo& info : preset_list()) known += " " + info.name;
  throw ConfigError("unknown preset '" + name + "'; available:" + known);
}

int run_experiment(const ExperimentConfig& config, std::ostream& log,
                   const std::atomic<bool>* stop) {
  try {
    ensure_out_dir(config.out_dir);
    write_manifest(config, join_path(config.out_dir, "manifest.txt"));
    if (config.command == "solve") return cmd_solve(config, log);
    if (config.command == "steady") return cmd_steady(config, log);
    if (config.command == "simulate") return cmd_simulate(config, log, stop);
    if (config.command == "learn") return cmd_learn(config, log, stop);
    if (config.command == "preset") return cmd_preset(config, log, stop);
    throw ConfigError("unknown command '" + config.command + "'");
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  } catch (const NoConvergence& e) {
    log << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateChain& e) {
    log << "error: " << e.what() << "\n";
    return 3;
  } catch (const BadTopology& e) {
    log << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hcensor
