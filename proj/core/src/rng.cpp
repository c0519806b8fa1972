#include "hcensor/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hcensor {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replication,
                          std::uint64_t node) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ (0x517cc1b727220a95ULL + replication));
  s = splitmix64(s ^ (0x2545f4914f6cdd1dULL + node));
  return s;
}

RngStream RngStream::derive(std::uint64_t master, std::uint64_t replication,
                            std::uint64_t node) {
  return RngStream(derive_seed(master, replication, node));
}

double RngStream::exponential(double mean) {
  if (mean < 0.0) throw std::invalid_argument("exponential: negative mean");
  return -mean * std::log(1.0 - u01());
}

int RngStream::geometric_from_one(double q) {
  if (q <= 0.0 || q > 1.0)
    throw std::invalid_argument("geometric_from_one: q outside (0,1]");
  if (q >= 1.0) return 1;
  double u = u01_open();
  double n = 1.0 + std::floor(std::log(u) / std::log1p(-q));
  if (n > 1e9) return 1000000000;  // never reached for the q used here
  return static_cast<int>(n);
}

int RngStream::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  // rejection sampling keeps the draw exactly uniform
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return lo + static_cast<int>(x % span);
}

}  // namespace hcensor
