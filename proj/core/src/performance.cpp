#include "hcensor/performance.hpp"

#include <cmath>
#include <limits>

namespace hcensor {

PerformanceResult expected_performance(const ThresholdPolicy& policy,
                                       const ScenarioModel& scenario) {
  PerformanceResult out;
  auto P = build_transition_matrix(policy, scenario.costs, scenario.importance);
  out.stationary = stationary_distribution(P);
  double rate = 0.0;
  for (int e = 0; e <= policy.capacity(); ++e) {
    double we = policy.w[static_cast<size_t>(e)];
    if (we <= 0.0) continue;
    rate += out.stationary.phi[static_cast<size_t>(e)] * we *
            scenario.importance.transmitted_mean(policy.threshold_ratio(e));
  }
  out.transmitted_rate = rate;
  out.value = rate / (1.0 - scenario.gamma);
  return out;
}

BalancedThreshold balanced_threshold(const CostModel& costs,
                                     const ImportanceModel& importance) {
  BalancedThreshold out;
  double c0 = costs.censor_cost_mean();
  double c1 = costs.transmit_cost_mean();
  if (c1 <= 0.0) {  // even transmitting everything gains energy
    out.mu_bar = 0.0;
    out.rho = 0.0;
    return out;
  }
  if (c0 >= 0.0) {  // drains even when silent
    out.mu_bar = std::numeric_limits<double>::infinity();
    out.never_balances = true;
    out.rho = 1.0;
    return out;
  }
  out.rho = c1 / (c1 - c0);
  out.mu_bar = importance.quantile(out.rho);
  return out;
}

PerformanceResult balanced_performance(const ScenarioModel& scenario) {
  BalancedThreshold bal = balanced_threshold(scenario.costs, scenario.importance);
  auto w = success_probability(scenario.costs, scenario.battery);
  return expected_performance(constant_ratio_policy(bal.mu_bar, std::move(w)),
                              scenario);
}

PerformanceResult nonselective_performance(const ScenarioModel& scenario) {
  auto w = success_probability(scenario.costs, scenario.battery);
  return expected_performance(constant_ratio_policy(0.0, std::move(w)), scenario);
}

}  // namespace hcensor
