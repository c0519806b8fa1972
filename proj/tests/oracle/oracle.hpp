#pragma once

#include <cstdint>
#include <vector>

#include "hcensor/policy.hpp"
#include "hcensor/scenario.hpp"

namespace hcensor::oracle {

// Brute-force solution of the joint (battery, importance-atom) decision
// problem. No threshold structure anywhere: plain Bellman backups over the
// full state space, greedy action per state, ties transmit.
struct JointSolution {
  std::vector<double> atom_x;                // importance support
  std::vector<double> atom_p;
  std::vector<std::vector<double>> value;    // [e][atom]
  std::vector<std::vector<int>> action;      // [e][atom], greedy
  std::vector<std::vector<double>> q_gap;    // [e][atom], Q1 - Q0
  std::vector<double> lambda;                // [e], value averaged over atoms
  std::vector<double> w;                     // [e], transmit success cdf
  long iterations = 0;
};

// Guards: battery <= 8 and an empirical importance model with <= 5 atoms;
// throws TooLarge otherwise.
JointSolution joint_value_iteration(const ScenarioModel& scenario,
                                    double tol = 1e-10,
                                    long max_iterations = 4000000);

// Normalized battery-level visit histogram (epoch-start levels) under a fixed
// threshold policy, after discarding the first 10% of epochs as burn-in.
std::vector<double> empirical_stationary(const ScenarioModel& scenario,
                                         const ThresholdPolicy& policy,
                                         long epochs, std::uint64_t seed);

}  // namespace hcensor::oracle
