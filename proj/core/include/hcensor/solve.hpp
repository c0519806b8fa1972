#pragma once

#include <vector>

#include "hcensor/policy.hpp"
#include "hcensor/scenario.hpp"

namespace hcensor {

struct SolveOptions {
  double tol = 1e-6;      // sup-norm change between sweeps
  long max_iterations = 1000000;
  bool keep_residual_history = false;
};

struct SolveResult {
  ThresholdPolicy policy;      // mu, w
  std::vector<double> lambda;  // reduced value per battery level
  long iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;  // filled when requested
};

// Fixed point of the reduced recursion
//   mu(e)     = gamma (E{lam(clip(e - c0))} - E{lam(clip(e - c1))})
//   lambda(e) = gamma E{lam(clip(e - c0))} + w(e) h(mu(e) / w(e))
// starting from lambda = 0, stopping when the sup-norm sweep change drops
// below tol. Throws NoConvergence past max_iterations.
SolveResult value_iteration(const ScenarioModel& scenario,
                            const SolveOptions& options = {});

// clip-transition kernel K[e][j] = P{clip(e - c) = j} for c ~ pmf.
std::vector<std::vector<double>> clip_kernel(const IntPmf& cost, int battery);

}  // namespace hcensor
