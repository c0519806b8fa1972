#include "hcensor/policy.hpp"

#include <cmath>
#include <limits>

#include "hcensor/errors.hpp"

namespace hcensor {

double ThresholdPolicy::threshold_ratio(EnergyLevel e) const {
  double we = w[static_cast<size_t>(e)];
  if (we <= 0.0) return std::numeric_limits<double>::infinity();
  return mu[static_cast<size_t>(e)] / we;
}

std::vector<double> success_probability(const CostModel& costs, int battery) {
  if (battery < 1) throw ConfigError("success_probability: battery must be >= 1");
  IntPmf c1 = costs.cost_pmf(1);
  std::vector<double> w(static_cast<size_t>(battery) + 1);
  double acc = 0.0;
  int v = c1.min;
  for (int e = 0; e <= battery; ++e) {
    while (v <= e && v <= c1.max()) acc += c1.at(v), ++v;
    w[static_cast<size_t>(e)] = std::min(1.0, acc);
  }
  return w;
}

ThresholdPolicy constant_ratio_policy(double ratio, std::vector<double> w) {
  ThresholdPolicy p;
  p.mu.resize(w.size());
  for (size_t e = 0; e < w.size(); ++e)
    p.mu[e] = std::isinf(ratio) ? ratio : ratio * w[e];
  p.w = std::move(w);
  return p;
}

}  // namespace hcensor
