#include "hcensor/replicate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace hcensor {

int worker_count() {
  if (const char* env = std::getenv("HARVEST_CENSOR_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
    return 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SimulationOutcome> run_replications(
    long replications, std::uint64_t master_seed,
    const std::function<SimulationOutcome(long, std::uint64_t)>& fn,
    const std::atomic<bool>* stop) {
  std::vector<std::optional<SimulationOutcome>> slots(
      static_cast<size_t>(replications));
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    for (;;) {
      if (stop && stop->load(std::memory_order_relaxed)) return;
      long idx = next.fetch_add(1, std::memory_order_relaxed);
      if (idx >= replications) return;
      try {
        slots[static_cast<size_t>(idx)] =
            fn(idx, derive_seed(master_seed, static_cast<std::uint64_t>(idx), 0));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  int workers = worker_count();
  if (workers <= 1 || replications <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<long>(workers, replications));
    pool.reserve(static_cast<size_t>(spawn));
    for (int i = 0; i < spawn; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SimulationOutcome> out;
  out.reserve(static_cast<size_t>(replications));
  for (auto& slot : slots) {
    if (!slot) break;  // interrupted: keep the completed prefix
    out.push_back(std::move(*slot));
  }
  return out;
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  a.count = static_cast<long>(values.size());
  if (a.count == 0) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(a.count);
  if (a.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(a.count - 1));
  }
  return a;
}

std::vector<double> collect(
    const std::vector<SimulationOutcome>& outcomes,
    const std::function<double(const SimulationOutcome&)>& f) {
  std::vector<double> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes) out.push_back(f(o));
  return out;
}

}  // namespace hcensor
