#pragma once

#include "hcensor/markov.hpp"
#include "hcensor/scenario.hpp"

namespace hcensor {

struct PerformanceResult {
  double value = 0.0;                 // long-run discounted importance flow
  double transmitted_rate = 0.0;      // expected transmitted importance per epoch
  StationaryResult stationary;
};

// V = 1/(1-gamma) sum_e phi(e) w(e) g(mu(e)/w(e)) under the policy's own
// stationary battery distribution.
PerformanceResult expected_performance(const ThresholdPolicy& policy,
                                       const ScenarioModel& scenario);

// Importance threshold that makes the mean epoch energy balance zero:
// quantile of rho = cbar_1 / (cbar_1 - cbar_0). Degenerate regimes:
// cbar_1 <= 0 -> 0 (transmit everything), cbar_0 >= 0 -> +inf and
// never_balances (no threshold can balance a drain that censoring cannot stop).
struct BalancedThreshold {
  double mu_bar = 0.0;
  bool never_balances = false;
  double rho = 0.0;
};

BalancedThreshold balanced_threshold(const CostModel& costs,
                                     const ImportanceModel& importance);

// Performance of the constant-ratio heuristics.
PerformanceResult balanced_performance(const ScenarioModel& scenario);      // ratio mu_bar
PerformanceResult nonselective_performance(const ScenarioModel& scenario);  // ratio 0

}  // namespace hcensor
