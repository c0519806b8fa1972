#pragma once

#include "hcensor/energy.hpp"
#include "hcensor/sap.hpp"

namespace hcensor {

// Adaptive balance tracker: estimates the zero-energy-balance importance
// quantile online. Keeps running means of the idle-epoch and transmit-epoch
// energy drops, targets rho = cbar1 / (cbar1 - cbar0), and chases the rho
// quantile of the importance stream with a projected stochastic step.
struct AbtState {
  explicit AbtState(StepSchedule schedule = StepSchedule::constant(0.05));

  enum class CostClass { censor, transmit };

  // Folds one sampled epoch energy cost into the matching running mean. The
  // censor class (sensing + reporting - harvest) is measurable on any epoch
  // whose pre-transmission level stayed positive; the transmit class needs a
  // transmit epoch that kept a positive battery.
  void fold_cost(CostClass cls, double measured_cost);

  // One quantile-chasing step on the importance stream; no-op until both cost
  // classes have data and the means differ:
  //   mu <- max(0, mu + eta_k (rho u(x - mu) - (1 - rho) u(mu - x))), u(0) = 1
  void track(double x, long k);

  int decide(double x) const { return x >= mu ? 1 : 0; }

  double rho() const;

  double mu = 0.0;
  StepSchedule schedule;
  long censor_count = 0;
  double censor_mean = 0.0;
  long transmit_count = 0;
  double transmit_mean = 0.0;
};

}  // namespace hcensor
