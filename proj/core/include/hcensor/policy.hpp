#pragma once

#include <vector>

#include "hcensor/cost.hpp"
#include "hcensor/energy.hpp"

namespace hcensor {

// Battery-indexed censoring policy: transmit message of importance x at
// battery e iff w[e] * x >= mu[e]. Equality transmits; w[e] = 0 censors
// unconditionally (transmission cannot succeed).
struct ThresholdPolicy {
  std::vector<double> mu;  // size B+1, nonnegative
  std::vector<double> w;   // size B+1, success probability, nondecreasing

  int capacity() const { return static_cast<int>(mu.size()) - 1; }

  int decide(EnergyLevel e, double x) const {
    if (w[static_cast<size_t>(e)] <= 0.0) return 0;
    return w[static_cast<size_t>(e)] * x >= mu[static_cast<size_t>(e)] ? 1 : 0;
  }

  // mu(e)/w(e); +inf where transmission cannot succeed.
  double threshold_ratio(EnergyLevel e) const;
};

// w[e] = P{c1 <= e}: probability a transmission completes before the battery
// runs out, from the exact transmit-cost distribution.
std::vector<double> success_probability(const CostModel& costs, int battery);

// Policy with constant importance-threshold ratio r: mu[e] = r * w[e]
// (r = +inf censors everywhere).
ThresholdPolicy constant_ratio_policy(double ratio, std::vector<double> w);

}  // namespace hcensor
