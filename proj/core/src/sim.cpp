#include "hcensor/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hcensor/errors.hpp"

namespace hcensor {

PolicySpec PolicySpec::fixed_policy(ThresholdPolicy p) {
  PolicySpec s;
  s.kind = Kind::fixed;
  s.fixed = std::move(p);
  return s;
}

PolicySpec PolicySpec::sap(StepSchedule sched) {
  PolicySpec s;
  s.kind = Kind::sap;
  s.schedule = sched;
  return s;
}

PolicySpec PolicySpec::abt(StepSchedule sched) {
  PolicySpec s;
  s.kind = Kind::abt;
  s.schedule = sched;
  return s;
}

PolicySpec PolicySpec::qlearn() {
  PolicySpec s;
  s.kind = Kind::qlearn;
  return s;
}

PolicySpec PolicySpec::nonselective() {
  PolicySpec s;
  s.kind = Kind::nonselective;
  return s;
}

const char* policy_kind_name(PolicySpec::Kind kind) {
  switch (kind) {
    case PolicySpec::Kind::fixed: return "fixed";
    case PolicySpec::Kind::sap: return "sap";
    case PolicySpec::Kind::abt: return "abt";
    case PolicySpec::Kind::qlearn: return "qlearn";
    case PolicySpec::Kind::nonselective: return "ns";
  }
  return "?";
}

PolicyRuntime::PolicyRuntime(const PolicySpec& spec, const ScenarioModel& scenario)
    : spec_(spec) {
  switch (spec.kind) {
    case PolicySpec::Kind::fixed:
      if (spec_.fixed.capacity() != scenario.battery)
        throw ConfigError("PolicyRuntime: fixed policy sized for a different battery");
      break;
    case PolicySpec::Kind::sap:
      sap_.emplace(scenario.battery, scenario.gamma, spec.schedule);
      break;
    case PolicySpec::Kind::abt:
      abt_.emplace(spec.schedule);
      break;
    case PolicySpec::Kind::qlearn: {
      double x_max = spec.q_x_max > 0.0 ? spec.q_x_max
                                        : 5.0 * scenario.importance.mean();
      q_.emplace(scenario.battery, x_max, scenario.gamma, spec.q_bins, spec.q_alpha,
                 spec.q_epsilon);
      break;
    }
    case PolicySpec::Kind::nonselective:
      break;
  }
}

int PolicyRuntime::decide(EnergyLevel e, double x, RngStream& policy_rng) {
  switch (spec_.kind) {
    case PolicySpec::Kind::fixed: return spec_.fixed.decide(e, x);
    case PolicySpec::Kind::sap: return sap_->decide(e, x);
    case PolicySpec::Kind::abt: return abt_->decide(x);
    case PolicySpec::Kind::qlearn: return q_->decide(e, x, policy_rng);
    case PolicySpec::Kind::nonselective: return 1;
  }
  return 1;
}

void PolicyRuntime::observe(EnergyLevel e_before, EnergyLevel e_mid,
                            EnergyLevel e_after, int action, double x,
                            double reward, const CostSample* costs) {
  switch (spec_.kind) {
    case PolicySpec::Kind::fixed:
    case PolicySpec::Kind::nonselective:
      last_eta_ = 0.0;
      break;
    case PolicySpec::Kind::sap:
      last_eta_ = sap_->schedule.eta(k_);
      sap_->observe(e_before, e_mid, e_after, action, x, k_);
      break;
    case PolicySpec::Kind::abt: {
      last_eta_ = abt_->schedule.eta(k_);
      // the balance target is a property of the cost process, not of the
      // battery: prefer metered flows, since battery deltas saturate at the
      // rails and drag the running means toward zero (a full battery then
      // reads as "censoring is free", trapping the threshold arbitrarily
      // high). Depletion epochs still feed nothing — the spend was cut short.
      double c0 = costs ? static_cast<double>(costs->c0)
                        : static_cast<double>(e_before - e_mid);
      double c1 = costs ? static_cast<double>(costs->total())
                        : static_cast<double>(e_before - e_after);
      if (e_mid > 0) abt_->fold_cost(AbtState::CostClass::censor, c0);
      if (action == 1 && e_after > 0)
        abt_->fold_cost(AbtState::CostClass::transmit, c1);
      abt_->track(x, k_);
      break;
    }
    case PolicySpec::Kind::qlearn: {
      last_eta_ = q_->alpha_q;
      int b = q_->bin(x);
      if (q_pending_) q_->update(q_e_, q_bin_, q_action_, q_reward_, e_before, b);
      q_pending_ = true;
      q_e_ = e_before;
      q_bin_ = b;
      q_action_ = action;
      q_reward_ = reward;
      break;
    }
  }
  ++k_;
}

double PolicyRuntime::mu_at(EnergyLevel e) const {
  switch (spec_.kind) {
    case PolicySpec::Kind::fixed: return spec_.fixed.mu[static_cast<size_t>(e)];
    case PolicySpec::Kind::sap: return sap_->mu[static_cast<size_t>(e)];
    case PolicySpec::Kind::abt: return abt_->mu;
    case PolicySpec::Kind::qlearn: return std::numeric_limits<double>::quiet_NaN();
    case PolicySpec::Kind::nonselective: return 0.0;
  }
  return 0.0;
}

std::vector<double> PolicyRuntime::mu_snapshot(int battery) const {
  std::vector<double> mu;
  switch (spec_.kind) {
    case PolicySpec::Kind::fixed: return spec_.fixed.mu;
    case PolicySpec::Kind::sap: return sap_->mu;
    case PolicySpec::Kind::abt:
      mu.assign(static_cast<size_t>(battery) + 1, abt_->mu);
      return mu;
    case PolicySpec::Kind::qlearn: return {};
    case PolicySpec::Kind::nonselective:
      mu.assign(static_cast<size_t>(battery) + 1, 0.0);
      return mu;
  }
  return mu;
}

namespace {

SimulationOutcome run_epoch_loop(const ScenarioModel& scenario,
                                 const PolicySpec& policy, long horizon,
                                 std::uint64_t seed, const SimOptions& options) {
  scenario.validate();
  if (horizon < 2) throw ConfigError("simulate: horizon must be >= 2");

  const int B = scenario.battery;
  RngStream env_rng(splitmix64(seed));
  RngStream policy_rng(splitmix64(seed ^ 0xa02bdbf7bb3c0a7ULL));
  PolicyRuntime runtime(policy, scenario);

  SimulationOutcome out;
  out.seed = seed;
  out.nodes.resize(1);
  NodeStats& stats = out.nodes[0];
  stats.battery_min = B;

  EnergyLevel e = options.initial_battery >= 0
                      ? clip(options.initial_battery, B)
                      : B;
  if (options.initial_distribution) {
    const auto& dist = *options.initial_distribution;
    double u = env_rng.u01(), acc = 0.0;
    e = 0;
    for (size_t j = 0; j < dist.size(); ++j) {
      acc += dist[j];
      if (u < acc) {
        e = static_cast<EnergyLevel>(j);
        break;
      }
      if (j + 1 == dist.size()) e = static_cast<EnergyLevel>(j);
    }
  }

  const long window_start = horizon / 2;
  double weight = 1.0, v_hat = 0.0;
  long slot = 0;
  double battery_sum = 0.0;
  long zero_slots = 0;

  for (long k = 0; k < horizon; ++k) {
    double x = scenario.importance.sample(env_rng);
    int a = runtime.decide(e, x, policy_rng);
    CostSample c = scenario.costs.sample_epoch_at(slot, a, env_rng);
    EnergyLevel e_mid = clip(static_cast<long long>(e) - c.c0, B);
    EnergyLevel e_next = e_mid;
    int w = 0;
    if (a == 1) {
      w = e_mid >= *c.delta ? 1 : 0;
      e_next = clip(static_cast<long long>(e) - c.c0 - *c.delta, B);
    }
    double reward = a == 1 && w == 1 ? x : 0.0;
    if (k >= window_start) {
      v_hat += weight * reward;
      weight *= scenario.gamma;
    }

    if (options.record_learner_trace)
      out.learner_trace.push_back({k, e, x, a, runtime.last_eta(), runtime.mu_at(e)});
    runtime.observe(e, e_mid, e_next, a, x, reward, &c);
    if (options.dump_mu_every > 0 && (k + 1) % options.dump_mu_every == 0)
      out.mu_dumps.emplace_back(k + 1, runtime.mu_snapshot(B));
    if (options.record_battery_trace) out.battery_trace.push_back({slot, 0, e});

    stats.tx_count += a;
    stats.censor_count += 1 - a;
    stats.success_count += w;
    stats.battery_min = std::min(stats.battery_min, static_cast<int>(e));
    battery_sum += e;
    if (e == 0) zero_slots += c.slots;
    slot += c.slots;
    e = e_next;
  }

  out.v_hat = v_hat;
  out.epochs = horizon;
  out.slots = slot;
  out.messages_generated = horizon;
  out.messages_delivered = stats.success_count;
  stats.battery_mean = battery_sum / static_cast<double>(horizon);
  stats.frac_battery_zero =
      slot > 0 ? static_cast<double>(zero_slots) / static_cast<double>(slot) : 0.0;
  return out;
}

}  // namespace

SimulationOutcome run_single_hop(const ScenarioModel& scenario,
                                 const PolicySpec& policy, long horizon,
                                 std::uint64_t seed, const SimOptions& options) {
  return run_epoch_loop(scenario, policy, horizon, seed, options);
}

SimulationOutcome run_non_stationary(const ScenarioModel& scenario,
                                     const PolicySpec& policy, long horizon,
                                     std::uint64_t seed, const SimOptions& options) {
  if (scenario.costs.harvest.stationary())
    throw ConfigError("run_non_stationary: scenario has no harvest schedule");
  return run_epoch_loop(scenario, policy, horizon, seed, options);
}

}  // namespace hcensor
