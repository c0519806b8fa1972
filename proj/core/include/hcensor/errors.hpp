#pragma once

#include <stdexcept>
#include <string>

namespace hcensor {

// Raised for malformed scenario/experiment input (CLI maps it to exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the value recursion does not reach tolerance within the
// iteration budget (CLI maps it to exit code 3).
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

// Raised when no stationary distribution can be pinned down numerically.
class DegenerateChain : public std::runtime_error {
 public:
  explicit DegenerateChain(const std::string& what) : std::runtime_error(what) {}
};

// Raised for malformed network layouts (cycles, unreachable sink, n < 2).
class BadTopology : public std::runtime_error {
 public:
  explicit BadTopology(const std::string& what) : std::runtime_error(what) {}
};

// Raised by brute-force reference paths when an instance exceeds their guards.
class TooLarge : public std::runtime_error {
 public:
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hcensor
