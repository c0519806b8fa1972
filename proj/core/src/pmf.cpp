#include "hcensor/pmf.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hcensor {

double IntPmf::mass() const {
  return std::accumulate(p.begin(), p.end(), 0.0);
}

double IntPmf::mean() const {
  double m = 0.0;
  for (size_t k = 0; k < p.size(); ++k) m += (min + static_cast<double>(k)) * p[k];
  return m;
}

double IntPmf::variance() const {
  double m = mean();
  double v = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    double d = min + static_cast<double>(k) - m;
    v += d * d * p[k];
  }
  return v;
}

double IntPmf::cdf(int value) const {
  if (value < min) return 0.0;
  double acc = 0.0;
  int hi = value < max() ? value : max();
  for (int v = min; v <= hi; ++v) acc += p[static_cast<size_t>(v - min)];
  return acc;
}

std::vector<double> IntPmf::cumulative() const {
  std::vector<double> c(p.size());
  double acc = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    acc += p[k];
    c[k] = acc;
  }
  return c;
}

void IntPmf::normalize() {
  double m = mass();
  if (m <= 0.0) throw std::invalid_argument("IntPmf::normalize: zero mass");
  for (double& x : p) x /= m;
}

void IntPmf::trim(double tail_eps) {
  if (p.empty()) return;
  size_t lo = 0, hi = p.size();
  double dropped = 0.0;
  while (lo < hi && dropped + p[lo] <= tail_eps) dropped += p[lo++];
  while (hi > lo && dropped + p[hi - 1] <= tail_eps) dropped += p[--hi];
  if (lo == hi) {  // keep the largest entry rather than an empty support
    size_t best = 0;
    for (size_t k = 1; k < p.size(); ++k)
      if (p[k] > p[best]) best = k;
    lo = best;
    hi = best + 1;
  }
  min += static_cast<int>(lo);
  p = std::vector<double>(p.begin() + static_cast<long>(lo), p.begin() + static_cast<long>(hi));
}

IntPmf convolve(const IntPmf& a, const IntPmf& b) {
  if (a.empty() || b.empty()) return {};
  IntPmf out;
  out.min = a.min + b.min;
  out.p.assign(a.p.size() + b.p.size() - 1, 0.0);
  for (size_t i = 0; i < a.p.size(); ++i) {
    if (a.p[i] == 0.0) continue;
    for (size_t j = 0; j < b.p.size(); ++j) out.p[i + j] += a.p[i] * b.p[j];
  }
  return out;
}

IntPmf geometric_from_one_pmf(double q, double tail_eps) {
  if (q <= 0.0 || q > 1.0)
    throw std::invalid_argument("geometric_from_one_pmf: q outside (0,1]");
  IntPmf out;
  out.min = 1;
  double tail = 1.0;  // P{N >= n}
  while (tail > tail_eps) {
    out.p.push_back(q * tail);
    tail *= (1.0 - q);
  }
  if (out.p.empty()) out.p.push_back(1.0);
  return out;
}

IntPmf compound_geometric(const IntPmf& step, double slots_mean, double tail_eps) {
  if (slots_mean < 1.0)
    throw std::invalid_argument("compound_geometric: mean slot count below 1");
  double q = 1.0 / slots_mean;
  if (q >= 1.0) return step;

  // sum_{n>=1} q (1-q)^(n-1) step^(*n), expanded until the remaining geometric
  // tail is negligible. Each partial convolution is trimmed hard so the total
  // truncated mass stays far below tail_eps.
  IntPmf power = step;
  IntPmf acc;
  acc.min = 0;
  double weight = q;   // q (1-q)^(n-1)
  double spent = 0.0;
  const double sub_eps = tail_eps * 1e-4;
  while (spent < 1.0 - sub_eps) {
    // acc += weight * power
    int lo = acc.empty() ? power.min : std::min(acc.min, power.min);
    int hi = acc.empty() ? power.max() : std::max(acc.max(), power.max());
    IntPmf merged;
    merged.min = lo;
    merged.p.assign(static_cast<size_t>(hi - lo + 1), 0.0);
    for (int v = acc.min; v <= acc.max() && !acc.empty(); ++v)
      merged.p[static_cast<size_t>(v - lo)] += acc.at(v);
    for (int v = power.min; v <= power.max(); ++v)
      merged.p[static_cast<size_t>(v - lo)] += weight * power.at(v);
    acc = std::move(merged);

    spent += weight;
    weight *= (1.0 - q);
    if (weight < sub_eps) break;
    power = convolve(power, step);
    power.trim(sub_eps);
  }
  acc.trim(tail_eps);
  acc.normalize();
  return acc;
}

}  // namespace hcensor
