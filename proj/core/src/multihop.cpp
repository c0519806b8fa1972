#include "hcensor/multihop.hpp"

#include <algorithm>
#include <cmath>

#include "hcensor/errors.hpp"

namespace hcensor {

namespace {

struct Message {
  double x;
};

}  // namespace

SimulationOutcome run_multi_hop(const Topology& topology,
                                const ScenarioModel& scenario,
                                const PolicySpec& policy, long horizon_slots,
                                std::uint64_t seed, const MultiHopOptions& options) {
  topology.validate();
  scenario.validate();
  if (horizon_slots < 2) throw ConfigError("run_multi_hop: horizon must be >= 2");
  if (policy.kind == PolicySpec::Kind::qlearn)
    throw ConfigError("run_multi_hop: the tabular learner is single-hop only");
  if (options.p_gen < 0.0 || options.p_gen > 1.0)
    throw ConfigError("run_multi_hop: p_gen outside [0,1]");

  const int n = topology.n;
  const int sink = topology.sink;
  const int B = scenario.battery;
  const CostModel& costs = scenario.costs;
  const long window_start = horizon_slots / 2;

  SimulationOutcome out;
  out.seed = seed;
  out.nodes.resize(static_cast<size_t>(n));
  out.slots = horizon_slots;

  std::vector<RngStream> env;
  std::vector<RngStream> agent;
  std::vector<PolicyRuntime> runtime;
  env.reserve(static_cast<size_t>(n) + 1);
  agent.reserve(static_cast<size_t>(n) + 1);
  runtime.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    env.emplace_back(RngStream::derive(seed, 0, static_cast<std::uint64_t>(i)));
    agent.emplace_back(
        RngStream::derive(seed ^ 0x9d3f0ea1c27bc9bdULL, 0, static_cast<std::uint64_t>(i)));
    runtime.emplace_back(policy, scenario);
  }

  int init = options.initial_battery >= 0 ? clip(options.initial_battery, B) : B;
  std::vector<EnergyLevel> battery(static_cast<size_t>(n) + 1,
                                   static_cast<EnergyLevel>(init));
  // battery level when each node's current epoch began
  std::vector<EnergyLevel> epoch_start(battery);
  // metered harvest minus idle drain since each node's last epoch, before
  // battery clipping — the cost samples handed to the learners
  std::vector<long long> flow(static_cast<size_t>(n) + 1, 0);
  std::vector<std::vector<Message>> inbox(static_cast<size_t>(n) + 1);
  std::vector<std::vector<Message>> next_inbox(static_cast<size_t>(n) + 1);
  std::vector<double> battery_sum(static_cast<size_t>(n) + 1, 0.0);
  std::vector<long> zero_slots(static_cast<size_t>(n) + 1, 0);
  std::vector<int> battery_min(static_cast<size_t>(n) + 1, init);

  double v_hat = 0.0;
  long total_epochs = 0;

  for (long t = 0; t < horizon_slots; ++t) {
    // harvest and idle drain, all sensor nodes
    for (int i = 1; i <= n; ++i) {
      if (i == sink) continue;
      int h = costs.harvest.sample_slot_at(t, env[static_cast<size_t>(i)]);
      flow[static_cast<size_t>(i)] += h - costs.c_I;
      battery[static_cast<size_t>(i)] =
          clip(static_cast<long long>(battery[static_cast<size_t>(i)]) + h - costs.c_I, B);
    }

    for (int i = 1; i <= n; ++i) {
      if (i == sink) continue;
      auto handle = [&](const Message& msg) {
        ++total_epochs;
        NodeStats& stats = out.nodes[static_cast<size_t>(i) - 1];
        EnergyLevel e_before = epoch_start[static_cast<size_t>(i)];
        int a = runtime[static_cast<size_t>(i)].decide(e_before, msg.x,
                                                       agent[static_cast<size_t>(i)]);
        EnergyLevel e_mid =
            clip(static_cast<long long>(battery[static_cast<size_t>(i)]) - costs.c_R, B);
        EnergyLevel e_after = e_mid;
        int w = 0;
        CostSample metered;
        metered.c0 = static_cast<int>(costs.c_R - flow[static_cast<size_t>(i)]);
        if (a == 1) {
          int n_T = env[static_cast<size_t>(i)].geometric_from_one(1.0 - costs.p_fail);
          int delta = n_T * costs.c_T;
          metered.delta = delta;
          w = e_mid >= delta ? 1 : 0;
          e_after = clip(static_cast<long long>(e_mid) - delta, B);
        }
        double reward = a == 1 && w == 1 ? msg.x : 0.0;
        runtime[static_cast<size_t>(i)].observe(e_before, e_mid, e_after, a, msg.x,
                                                reward, &metered);
        flow[static_cast<size_t>(i)] = 0;
        battery[static_cast<size_t>(i)] = e_after;
        epoch_start[static_cast<size_t>(i)] = e_after;
        stats.tx_count += a;
        stats.censor_count += 1 - a;
        stats.success_count += w;
        if (a == 1 && w == 1) {
          int hop = topology.next_hop[static_cast<size_t>(i)];
          long arrival = t + 1;
          if (arrival < horizon_slots) {
            if (hop == sink) {
              ++out.messages_delivered;
              if (arrival >= window_start)
                v_hat += std::pow(scenario.gamma,
                                  static_cast<double>(arrival - window_start)) *
                         msg.x;
            } else {
              next_inbox[static_cast<size_t>(hop)].push_back(msg);
            }
          }
        }
      };

      for (const Message& msg : inbox[static_cast<size_t>(i)]) handle(msg);
      inbox[static_cast<size_t>(i)].clear();
      if (env[static_cast<size_t>(i)].bernoulli(options.p_gen)) {
        ++out.messages_generated;
        handle(Message{scenario.importance.sample(env[static_cast<size_t>(i)])});
      }
    }

    for (int i = 1; i <= n; ++i) {
      if (i == sink) continue;
      EnergyLevel e = battery[static_cast<size_t>(i)];
      battery_sum[static_cast<size_t>(i)] += e;
      if (e == 0) ++zero_slots[static_cast<size_t>(i)];
      battery_min[static_cast<size_t>(i)] =
          std::min(battery_min[static_cast<size_t>(i)], static_cast<int>(e));
      if (options.record_battery_trace)
        out.battery_trace.push_back({t, i, e});
      std::swap(inbox[static_cast<size_t>(i)], next_inbox[static_cast<size_t>(i)]);
    }
  }

  for (int i = 1; i <= n; ++i) {
    NodeStats& stats = out.nodes[static_cast<size_t>(i) - 1];
    stats.battery_min = i == sink ? init : battery_min[static_cast<size_t>(i)];
    stats.battery_mean =
        battery_sum[static_cast<size_t>(i)] / static_cast<double>(horizon_slots);
    stats.frac_battery_zero = static_cast<double>(zero_slots[static_cast<size_t>(i)]) /
                              static_cast<double>(horizon_slots);
  }
  out.v_hat = v_hat;
  out.epochs = total_epochs;
  return out;
}

}  // namespace hcensor
