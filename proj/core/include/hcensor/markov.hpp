#pragma once

#include <vector>

#include "hcensor/importance.hpp"
#include "hcensor/policy.hpp"

namespace hcensor {

// Battery-level Markov chain induced by a threshold policy. Row e mixes the
// censor-cost and transmit-cost distributions with the censor probability
// q(e) = P{x < mu(e)/w(e)}; depletion and overflow mass collapse onto the
// boundary states.
std::vector<std::vector<double>> build_transition_matrix(
    const ThresholdPolicy& policy, const CostModel& costs,
    const ImportanceModel& importance);

enum class StationaryMethod { direct_solve, power_iteration };

struct StationaryResult {
  std::vector<double> phi;  // nonnegative, sums to 1
  StationaryMethod method = StationaryMethod::direct_solve;
  double residual = 0.0;    // sup norm of phi^T P - phi^T
};

// Stationary distribution of a row-stochastic matrix. Direct linear solve
// first; on rank deficiency or a bad residual, power iteration on the
// half-lazy kernel (I+P)/2 (same fixed points, immune to periodicity).
// Throws DegenerateChain when neither path reaches residual 1e-8.
StationaryResult stationary_distribution(const std::vector<std::vector<double>>& P);

}  // namespace hcensor
