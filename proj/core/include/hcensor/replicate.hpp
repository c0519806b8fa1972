#pragma once

#include <atomic>
#include <functional>

#include "hcensor/sim.hpp"

namespace hcensor {

// Worker count: HARVEST_CENSOR_THREADS when set (clamped to >= 1), otherwise
// the hardware concurrency.
int worker_count();

// Runs fn(replication_index, seed) for indices [0, replications) across the
// worker pool, with seed = derive_seed(master_seed, index, 0). Results come
// back ordered by index, so the output is independent of scheduling. A set
// stop flag drains the pool early; completed prefixes are still returned (the
// vector is truncated at the first un-run index).
std::vector<SimulationOutcome> run_replications(
    long replications, std::uint64_t master_seed,
    const std::function<SimulationOutcome(long, std::uint64_t)>& fn,
    const std::atomic<bool>* stop = nullptr);

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  long count = 0;
};

Aggregate aggregate(const std::vector<double>& values);

// Pull one scalar per outcome, e.g. v_hat.
std::vector<double> collect(const std::vector<SimulationOutcome>& outcomes,
                            const std::function<double(const SimulationOutcome&)>& f);

}  // namespace hcensor
