#include "hcensor/solve.hpp"

#include <cmath>
#include <limits>

#include "hcensor/errors.hpp"

namespace hcensor {

std::vector<std::vector<double>> clip_kernel(const IntPmf& cost, int battery) {
  const int B = battery;
  std::vector<std::vector<double>> K(
      static_cast<size_t>(B) + 1, std::vector<double>(static_cast<size_t>(B) + 1, 0.0));
  for (int e = 0; e <= B; ++e) {
    auto& row = K[static_cast<size_t>(e)];
    for (int c = cost.min; c <= cost.max(); ++c) {
      long long next = static_cast<long long>(e) - c;
      int j = next < 0 ? 0 : (next > B ? B : static_cast<int>(next));
      row[static_cast<size_t>(j)] += cost.at(c);
    }
  }
  return K;
}

namespace {

// y = K v
void apply(const std::vector<std::vector<double>>& K, const std::vector<double>& v,
           std::vector<double>& y) {
  const size_t n = v.size();
  for (size_t e = 0; e < n; ++e) {
    const auto& row = K[e];
    double acc = 0.0;
    for (size_t j = 0; j < n; ++j) acc += row[j] * v[j];
    y[e] = acc;
  }
}

}  // namespace

SolveResult value_iteration(const ScenarioModel& scenario, const SolveOptions& options) {
  scenario.validate();
  const int B = scenario.battery;
  const double gamma = scenario.gamma;
  const ImportanceModel& imp = scenario.importance;

  IntPmf c0 = scenario.costs.cost_pmf(0);
  IntPmf c1 = scenario.costs.cost_pmf(1);
  auto K0 = clip_kernel(c0, B);
  auto K1 = clip_kernel(c1, B);

  SolveResult out;
  out.policy.w = success_probability(scenario.costs, B);
  const std::vector<double>& w = out.policy.w;

  const size_t n = static_cast<size_t>(B) + 1;
  std::vector<double> lam(n, 0.0), lam_next(n), e0(n), e1(n);
  out.policy.mu.assign(n, 0.0);

  for (long it = 1; it <= options.max_iterations; ++it) {
    apply(K0, lam, e0);
    apply(K1, lam, e1);
    double diff = 0.0;
    for (size_t e = 0; e < n; ++e) {
      // nonnegative in exact arithmetic; clamp rounding dust
      double mu = std::max(0.0, gamma * (e0[e] - e1[e]));
      out.policy.mu[e] = mu;
      double gain = 0.0;
      if (w[e] > 0.0) gain = w[e] * imp.mean_excess(mu / w[e]);
      lam_next[e] = gamma * e0[e] + gain;
      diff = std::max(diff, std::abs(lam_next[e] - lam[e]));
    }
    lam.swap(lam_next);
    out.iterations = it;
    out.residual = diff;
    if (options.keep_residual_history) out.residual_history.push_back(diff);
    if (diff < options.tol) {
      out.lambda = lam;
      return out;
    }
  }
  throw NoConvergence("value_iteration: no fixed point within " +
                          std::to_string(options.max_iterations) +
                          " sweeps (residual " + std::to_string(out.residual) + ")",
                      out.residual);
}

}  // namespace hcensor
