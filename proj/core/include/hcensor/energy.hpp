#pragma once

namespace hcensor {

// Battery levels are integers in [0, capacity]; all battery arithmetic goes
// through clip so depletion and overflow cannot escape the range.
using EnergyLevel = int;

inline EnergyLevel clip(long long value, int capacity) {
  if (value < 0) return 0;
  if (value > capacity) return capacity;
  return static_cast<EnergyLevel>(value);
}

}  // namespace hcensor
