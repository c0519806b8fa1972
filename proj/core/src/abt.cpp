#include "hcensor/abt.hpp"

#include <algorithm>

namespace hcensor {

AbtState::AbtState(StepSchedule schedule) : schedule(schedule) {}

double AbtState::rho() const {
  return transmit_mean / (transmit_mean - censor_mean);
}

void AbtState::fold_cost(CostClass cls, double measured_cost) {
  if (cls == CostClass::censor) {
    ++censor_count;
    censor_mean += (measured_cost - censor_mean) / static_cast<double>(censor_count);
  } else {
    ++transmit_count;
    transmit_mean +=
        (measured_cost - transmit_mean) / static_cast<double>(transmit_count);
  }
}

void AbtState::track(double x, long k) {
  if (censor_count == 0 || transmit_count == 0) return;
  if (transmit_mean == censor_mean) return;  // rho undefined, hold mu

  double r = rho();
  double eta = schedule.eta(k);
  double up = x >= mu ? 1.0 : 0.0;
  double down = mu >= x ? 1.0 : 0.0;
  mu = std::max(0.0, mu + eta * (r * up - (1.0 - r) * down));
}

}  // namespace hcensor
