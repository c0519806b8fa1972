#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hcensor/errors.hpp"
#include "hcensor/experiment.hpp"
#include "hcensor/presets.hpp"
#include "hcensor/scenario.hpp"

using namespace hcensor;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "hcensor_cli_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

ScenarioModel quick_scenario(double gamma = 0.9) {
  ScenarioModel s;
  s.battery = 12;
  s.costs.c_I = 1;
  s.costs.c_R = 1;
  s.costs.c_T = 2;
  s.costs.p_fail = 0.2;
  s.costs.slots = SlotModel::geometric(1.5);
  s.costs.harvest = HarvestModel::per_slot_geometric(0.5, 2.0);
  s.importance = ImportanceModel::exponential(1.0);
  s.gamma = gamma;
  return s;
}

}  // namespace

TEST_CASE("solve writes the policy table and a reusable manifest") {
  auto dir_a = fresh_dir("solve_a");
  ExperimentConfig config;
  config.command = "solve";
  config.scenario = quick_scenario();
  config.has_scenario = true;
  config.out_dir = dir_a.string();
  config.tol = 1e-8;

  std::ostringstream log;
  REQUIRE(run_experiment(config, log) == 0);

  auto policy = lines_of(slurp(dir_a / "policy.csv"));
  REQUIRE(policy.size() == 14);  // header + one row per battery level
  CHECK(policy[0] == "e,mu,w,lambda");

  ExperimentConfig back = read_manifest((dir_a / "manifest.txt").string());
  CHECK(back.command == "solve");
  CHECK(back.tol == 1e-8);
  REQUIRE(back.has_scenario);
  CHECK(serialize_scenario(back.scenario) == serialize_scenario(config.scenario));

  auto dir_b = fresh_dir("solve_b");
  back.out_dir = dir_b.string();
  std::ostringstream log2;
  REQUIRE(run_experiment(back, log2) == 0);
  CHECK(slurp(dir_a / "policy.csv") == slurp(dir_b / "policy.csv"));
}

TEST_CASE("a myopic discount zeroes every threshold") {
  auto dir = fresh_dir("solve_g0");
  ExperimentConfig config;
  config.command = "solve";
  config.scenario = quick_scenario(0.0);
  config.has_scenario = true;
  config.out_dir = dir.string();
  std::ostringstream log;
  REQUIRE(run_experiment(config, log) == 0);
  auto rows = lines_of(slurp(dir / "policy.csv"));
  for (size_t i = 1; i < rows.size(); ++i) {
    std::istringstream ss(rows[i]);
    std::string e, mu;
    std::getline(ss, e, ',');
    std::getline(ss, mu, ',');
    CHECK(std::stod(mu) == 0.0);
  }
}

TEST_CASE("steady writes the value comparison and the stationary law") {
  auto dir = fresh_dir("steady");
  ExperimentConfig config;
  config.command = "steady";
  config.scenario = quick_scenario();
  config.has_scenario = true;
  config.out_dir = dir.string();
  std::ostringstream log;
  REQUIRE(run_experiment(config, log) == 0);
  auto sweep = lines_of(slurp(dir / "sweep.csv"));
  REQUIRE(sweep.size() == 2);
  CHECK(sweep[0] == "cbar0,V_opt,V_bal,V_ns");
  auto phi = lines_of(slurp(dir / "stationary.csv"));
  CHECK(phi.size() == 14);
}

TEST_CASE("simulate writes per-policy replication files plus the aggregate") {
  auto dir_a = fresh_dir("sim_a");
  ExperimentConfig config;
  config.command = "simulate";
  config.scenario = quick_scenario();
  config.has_scenario = true;
  config.out_dir = dir_a.string();
  config.policies = {"ns", "ratio:1"};
  config.replications = 3;
  config.horizon = 400;
  std::ostringstream log;
  REQUIRE(run_experiment(config, log) == 0);

  auto agg = lines_of(slurp(dir_a / "aggregate.csv"));
  REQUIRE(agg.size() == 3);
  CHECK(agg[0] == "policy,mean,std,count,frac_zero_mean");
  CHECK(agg[1].rfind("ns,", 0) == 0);
  CHECK(agg[2].rfind("ratio:1,", 0) == 0);
  CHECK(lines_of(slurp(dir_a / "replications_ns.csv")).size() == 4);

  // feeding the manifest back reproduces every output byte for byte
  ExperimentConfig back = read_manifest((dir_a / "manifest.txt").string());
  auto dir_b = fresh_dir("sim_b");
  back.out_dir = dir_b.string();
  std::ostringstream log2;
  REQUIRE(run_experiment(back, log2) == 0);
  for (const char* name : {"aggregate.csv", "replications_ns.csv", "replications_ratio:1.csv"})
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
}

TEST_CASE("learn writes traces and threshold dumps for learners only") {
  auto dir = fresh_dir("learn");
  ExperimentConfig config;
  config.command = "learn";
  config.scenario = quick_scenario();
  config.has_scenario = true;
  config.out_dir = dir.string();
  config.policies = {"sap"};
  config.horizon = 300;
  config.dump_every = 150;
  std::ostringstream log;
  REQUIRE(run_experiment(config, log) == 0);
  auto trace = lines_of(slurp(dir / "trace_sap.csv"));
  REQUIRE(trace.size() == 301);
  CHECK(trace[0] == "k,e,x,a,eta,mu_at_e");
  auto mu = lines_of(slurp(dir / "mu_sap.csv"));
  CHECK(mu.size() == 1 + 2 * 13);  // two dumps, one row per battery level

  config.policies = {"ns"};
  std::ostringstream log2;
  CHECK(run_experiment(config, log2) == 2);

  config.policies = {"sap"};
  config.topology = "tree:4";
  std::ostringstream log3;
  CHECK(run_experiment(config, log3) == 2);
}

TEST_CASE("unknown commands, presets, and manifest keys are refused") {
  auto dir = fresh_dir("errors");
  ExperimentConfig config;
  config.command = "fly";
  config.out_dir = dir.string();
  std::ostringstream log;
  CHECK(run_experiment(config, log) == 2);

  config.command = "preset";
  config.preset = "nonesuch";
  std::ostringstream log2;
  CHECK(run_experiment(config, log2) == 2);

  std::ofstream bad(dir / "bad.txt");
  bad << "command = solve\nbogus = 1\n";
  bad.close();
  CHECK_THROWS_AS(read_manifest((dir / "bad.txt").string()), ConfigError);

  std::ofstream worse(dir / "worse.txt");
  worse << "command solve\n";
  worse.close();
  CHECK_THROWS_AS(read_manifest((dir / "worse.txt").string()), ConfigError);
}

TEST_CASE("policy tokens map onto the right runtime kinds") {
  ExperimentConfig config;
  auto s = quick_scenario();

  CHECK(make_policy_spec("opt", s, config).kind == PolicySpec::Kind::fixed);
  CHECK(make_policy_spec("bal", s, config).kind == PolicySpec::Kind::fixed);
  CHECK(make_policy_spec("ns", s, config).kind == PolicySpec::Kind::nonselective);
  CHECK(make_policy_spec("q", s, config).kind == PolicySpec::Kind::qlearn);
  CHECK(make_policy_spec("ratio:2.5", s, config).kind == PolicySpec::Kind::fixed);

  auto sap = make_policy_spec("sap", s, config);
  CHECK(sap.kind == PolicySpec::Kind::sap);
  CHECK(sap.schedule.eta(0) == 1.0);  // decaying by default
  config.sap_eta = 0.3;
  CHECK(make_policy_spec("sap", s, config).schedule.eta(7) == 0.3);

  auto abt = make_policy_spec("abt", s, config);
  CHECK(abt.kind == PolicySpec::Kind::abt);
  CHECK(abt.schedule.eta(7) == 0.05);  // constant by default

  CHECK_THROWS_AS(make_policy_spec("zzz", s, config), ConfigError);
  CHECK_THROWS_AS(make_policy_spec("ratio:x", s, config), ConfigError);
  CHECK_THROWS_AS(make_policy_spec("ratio:-1", s, config), ConfigError);
}

TEST_CASE("step tuning scores candidates on shared seeds") {
  auto s = quick_scenario();
  CHECK_THROWS_AS(tune_decaying_step(PolicySpec::Kind::sap, s, 100, 2, 1, {}),
                  ConfigError);
  CHECK_THROWS_AS(tune_decaying_step(PolicySpec::Kind::nonselective, s, 100, 2, 1,
                                     {1e-3}),
                  ConfigError);
  auto r = tune_decaying_step(PolicySpec::Kind::sap, s, 300, 2, 1, {1e-3});
  CHECK(r.delta == 1e-3);
  CHECK(r.score.count == 2);
  auto full = tune_decaying_step(PolicySpec::Kind::sap, s, 300, 2, 1,
                                 decaying_delta_grid());
  bool on_grid = false;
  for (double d : decaying_delta_grid()) on_grid |= (full.delta == d);
  CHECK(on_grid);
}

TEST_CASE("bundled threshold sweep reruns byte for byte") {
  auto dir_a = fresh_dir("preset_a");
  ExperimentConfig config;
  config.command = "preset";
  config.preset = "thresholds";
  config.out_dir = dir_a.string();
  std::ostringstream log;
  REQUIRE(run_experiment(config, log) == 0);

  ExperimentConfig back = read_manifest((dir_a / "manifest.txt").string());
  auto dir_b = fresh_dir("preset_b");
  back.out_dir = dir_b.string();
  std::ostringstream log2;
  REQUIRE(run_experiment(back, log2) == 0);
  for (const char* name : {"policy_mb5.csv", "policy_mb10.csv", "policy_mb15.csv"})
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
}
