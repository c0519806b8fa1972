#pragma once

#include <cstdint>
#include <random>

namespace hcensor {

// Reproducible random stream. The engine is std::mt19937_64 (bit-stable by
// the standard); every distribution is sampled by explicit inversion so the
// draw sequence does not depend on the standard library implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  // Deterministic substream for (master seed, replication, node).
  static RngStream derive(std::uint64_t master, std::uint64_t replication,
                          std::uint64_t node);

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1); safe for log().
  double u01_open() {
    return (static_cast<double>(gen_() >> 12) + 0.5) * 0x1.0p-52;
  }

  bool bernoulli(double p) { return u01() < p; }

  double exponential(double mean) ;

  // Geometric on {1, 2, ...} with success probability q per trial.
  int geometric_from_one(double q);

  // Uniform integer on [lo, hi] inclusive.
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed for (master, replication, node); RngStream::derive(seed...) wraps it.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication,
                          std::uint64_t node);

}  // namespace hcensor
