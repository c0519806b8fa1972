#pragma once

#include <vector>

namespace hcensor {

// Probability mass function on a contiguous integer support [min, max()].
// Entries are nonnegative; mass() is 1 after normalize().
struct IntPmf {
  int min = 0;
  std::vector<double> p;

  int max() const { return min + static_cast<int>(p.size()) - 1; }
  bool empty() const { return p.empty(); }

  double at(int value) const {
    if (value < min || value > max()) return 0.0;
    return p[static_cast<size_t>(value - min)];
  }

  double mass() const;
  double mean() const;
  double variance() const;

  // P{X <= value}. O(support); use cumulative() for repeated queries.
  double cdf(int value) const;

  // c[k] = P{X <= min + k}.
  std::vector<double> cumulative() const;

  void normalize();

  // Drops leading/trailing support whose combined mass is below tail_eps.
  void trim(double tail_eps);

  static IntPmf delta(int value) { return IntPmf{value, {1.0}}; }
};

IntPmf convolve(const IntPmf& a, const IntPmf& b);

// Geometric on {1, 2, ...} with P{N = n} = q (1-q)^(n-1), truncated once the
// remaining tail is below tail_eps.
IntPmf geometric_from_one_pmf(double q, double tail_eps);

// Distribution of X_1 + ... + X_N for i.i.d. X ~ step and N ~ geometric on
// {1, 2, ...} with mean slots_mean (slots_mean = 1 collapses to step).
IntPmf compound_geometric(const IntPmf& step, double slots_mean, double tail_eps);

}  // namespace hcensor
