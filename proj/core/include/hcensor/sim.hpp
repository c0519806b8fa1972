#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcensor/abt.hpp"
#include "hcensor/policy.hpp"
#include "hcensor/qlearn.hpp"
#include "hcensor/sap.hpp"
#include "hcensor/scenario.hpp"

namespace hcensor {

// Decision rule a simulated node runs.
struct PolicySpec {
  enum class Kind { fixed, sap, abt, qlearn, nonselective };

  Kind kind = Kind::nonselective;
  ThresholdPolicy fixed;
  StepSchedule schedule = StepSchedule::constant(0.5);
  int q_bins = 100;
  double q_alpha = 0.2;
  double q_epsilon = 0.1;
  double q_x_max = 0.0;  // 0: five importance means

  static PolicySpec fixed_policy(ThresholdPolicy p);
  static PolicySpec sap(StepSchedule s) ;
  static PolicySpec abt(StepSchedule s);
  static PolicySpec qlearn();
  static PolicySpec nonselective();
};

const char* policy_kind_name(PolicySpec::Kind kind);

// Live policy instance: decides, then learns from the measured battery drops.
class PolicyRuntime {
 public:
  PolicyRuntime(const PolicySpec& spec, const ScenarioModel& scenario);

  int decide(EnergyLevel e, double x, RngStream& policy_rng);

  // e_before: battery at the epoch start; e_mid: after the non-transmission
  // costs; e_after: at the next epoch start; reward: a w x for this epoch.
  // costs, when given, carries the epoch's metered energy flows; the balance
  // tracker estimates its cost means from those instead of battery deltas,
  // which saturate at the battery rails.
  void observe(EnergyLevel e_before, EnergyLevel e_mid, EnergyLevel e_after,
               int action, double x, double reward,
               const CostSample* costs = nullptr);

  // Current threshold at battery e (NaN for the tabular learner).
  double mu_at(EnergyLevel e) const;

  // Threshold vector snapshot (empty for the tabular learner).
  std::vector<double> mu_snapshot(int battery) const;

  double last_eta() const { return last_eta_; }
  long epochs_seen() const { return k_; }
  PolicySpec::Kind kind() const { return spec_.kind; }
  const SapState* sap_state() const { return sap_ ? &*sap_ : nullptr; }
  const AbtState* abt_state() const { return abt_ ? &*abt_ : nullptr; }

 private:
  PolicySpec spec_;
  std::optional<SapState> sap_;
  std::optional<AbtState> abt_;
  std::optional<QTable> q_;
  // previous transition held back until the next state is known
  bool q_pending_ = false;
  EnergyLevel q_e_ = 0;
  int q_bin_ = 0;
  int q_action_ = 0;
  double q_reward_ = 0.0;
  long k_ = 0;
  double last_eta_ = 0.0;
};

struct LearnerTraceRow {
  long k;
  EnergyLevel e;
  double x;
  int action;
  double eta;
  double mu_at_e;
};

struct SimOptions {
  int initial_battery = -1;  // -1: full
  // when set, the initial level is drawn from this distribution instead
  std::optional<std::vector<double>> initial_distribution;
  bool record_battery_trace = false;
  bool record_learner_trace = false;
  long dump_mu_every = 0;  // 0: never
};

struct NodeStats {
  long tx_count = 0;
  long censor_count = 0;
  long success_count = 0;
  int battery_min = 0;
  double battery_mean = 0.0;
  double frac_battery_zero = 0.0;  // fraction of slots with an empty battery
};

struct BatteryTraceRow {
  long slot;
  int node;
  EnergyLevel e;
};

struct SimulationOutcome {
  double v_hat = 0.0;
  long epochs = 0;
  long slots = 0;
  long messages_generated = 0;
  long messages_delivered = 0;
  std::uint64_t seed = 0;
  std::vector<NodeStats> nodes;
  std::vector<BatteryTraceRow> battery_trace;
  std::vector<LearnerTraceRow> learner_trace;
  std::vector<std::pair<long, std::vector<double>>> mu_dumps;
};

// One node reporting straight to the sink for `horizon` epochs. The score
// restarts its discount at the window start (second half):
//   v_hat = sum_{k >= K/2} gamma^(k - K/2) a_k w_k x_k.
SimulationOutcome run_single_hop(const ScenarioModel& scenario,
                                 const PolicySpec& policy, long horizon,
                                 std::uint64_t seed, const SimOptions& options = {});

// Same engine, for scenarios whose harvest schedule changes over time.
// Requires a non-empty schedule.
SimulationOutcome run_non_stationary(const ScenarioModel& scenario,
                                     const PolicySpec& policy, long horizon,
                                     std::uint64_t seed,
                                     const SimOptions& options = {});

}  // namespace hcensor
