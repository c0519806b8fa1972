#include "hcensor/markov.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hcensor/errors.hpp"

namespace hcensor {

std::vector<std::vector<double>> build_transition_matrix(
    const ThresholdPolicy& policy, const CostModel& costs,
    const ImportanceModel& importance) {
  const int B = policy.capacity();
  IntPmf pmf0 = costs.cost_pmf(0);
  IntPmf pmf1 = costs.cost_pmf(1);

  // cdf lookups tolerant of out-of-support arguments
  auto cdf_of = [](const IntPmf& pmf, int v) {
    if (v < pmf.min) return 0.0;
    if (v >= pmf.max()) return 1.0;
    return pmf.cdf(v);
  };

  std::vector<std::vector<double>> P(
      static_cast<size_t>(B) + 1, std::vector<double>(static_cast<size_t>(B) + 1, 0.0));
  for (int i = 0; i <= B; ++i) {
    double q = importance.cdf_strict(policy.threshold_ratio(i));
    auto mix_pmf = [&](int c) { return (1.0 - q) * pmf1.at(c) + q * pmf0.at(c); };
    auto mix_cdf = [&](int v) {
      return (1.0 - q) * cdf_of(pmf1, v) + q * cdf_of(pmf0, v);
    };
    auto& row = P[static_cast<size_t>(i)];
    if (B == 0) {
      row[0] = 1.0;
      continue;
    }
    row[0] = 1.0 - mix_cdf(i - 1);               // depletion: c >= i
    for (int j = 1; j < B; ++j) row[static_cast<size_t>(j)] = mix_pmf(i - j);
    row[static_cast<size_t>(B)] = mix_cdf(i - B);  // overflow: c <= i - B
  }
  return P;
}

namespace {

double stationarity_residual(const std::vector<std::vector<double>>& P,
                             const std::vector<double>& phi) {
  const size_t n = phi.size();
  double r = 0.0;
  for (size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += phi[i] * P[i][j];
    r = std::max(r, std::abs(acc - phi[j]));
  }
  return r;
}

bool clean(std::vector<double>& phi) {
  double total = 0.0;
  for (double& x : phi) {
    if (!std::isfinite(x) || x < -1e-9) return false;
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (total <= 0.0) return false;
  for (double& x : phi) x /= total;
  return true;
}

}  // namespace

StationaryResult stationary_distribution(const std::vector<std::vector<double>>& P) {
  const size_t n = P.size();
  if (n == 0) throw DegenerateChain("stationary_distribution: empty matrix");

  // direct solve: (P^T - I) phi = 0 with the last balance equation replaced
  // by sum(phi) = 1
  Eigen::MatrixXd A(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      A(static_cast<long>(i), static_cast<long>(j)) = P[j][i] - (i == j ? 1.0 : 0.0);
  for (size_t j = 0; j < n; ++j) A(static_cast<long>(n - 1), static_cast<long>(j)) = 1.0;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(n));
  rhs(static_cast<long>(n - 1)) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (lu.isInvertible()) {
    Eigen::VectorXd sol = lu.solve(rhs);
    std::vector<double> phi(sol.data(), sol.data() + n);
    if (clean(phi)) {
      double r = stationarity_residual(P, phi);
      if (r < 1e-8) return {std::move(phi), StationaryMethod::direct_solve, r};
    }
  }

  // power iteration on (I+P)/2 from uniform
  std::vector<double> phi(n, 1.0 / static_cast<double>(n)), next(n);
  double r = stationarity_residual(P, phi);
  const long budget = 1000000;
  for (long it = 0; it < budget && r >= 1e-10; ++it) {
    for (size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (size_t i = 0; i < n; ++i) acc += phi[i] * P[i][j];
      next[j] = 0.5 * (phi[j] + acc);
    }
    phi.swap(next);
    r = stationarity_residual(P, phi);
  }
  if (r >= 1e-8)
    throw DegenerateChain(
        "stationary_distribution: power iteration stalled at residual " +
        std::to_string(r));
  clean(phi);
  return {std::move(phi), StationaryMethod::power_iteration, r};
}

}  // namespace hcensor
