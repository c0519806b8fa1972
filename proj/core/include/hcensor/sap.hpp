#pragma once

#include <vector>

#include "hcensor/energy.hpp"

namespace hcensor {

// Learning-rate schedule: constant eta, or eta_k = 1 / (1 + delta k).
struct StepSchedule {
  static StepSchedule constant(double eta);
  static StepSchedule decaying(double delta);

  bool is_constant = true;
  double eta0 = 0.5;
  double delta = 0.0;

  double eta(long k) const {
    return is_constant ? eta0 : 1.0 / (1.0 + delta * static_cast<double>(k));
  }
};

// Stochastic-approximation learner for the censoring threshold. Tracks
// battery-indexed estimates of the reduced value (lambda), the censor- and
// transmit-shifted values (alpha, beta) and the success probability (omega),
// from measured per-epoch energy drops alone.
struct SapState {
  explicit SapState(int battery, double gamma,
                    StepSchedule schedule = StepSchedule::constant(0.5));

  int capacity() const { return static_cast<int>(lambda.size()) - 1; }

  // u(omega(e) x - mu(e)); u(0) = 1, so a fresh all-zero state transmits.
  int decide(EnergyLevel e, double x) const;

  // One epoch of measurements: battery at the epoch start, after the
  // non-transmission costs, and at the next epoch start. Updates are
  // synchronous (right-hand sides use the pre-update vectors):
  //   lambda <- (1-eta) lambda + eta (gamma alpha + (x omega - gamma (alpha-beta))+)
  //   alpha  <- (1-eta) alpha  + eta T_{c0} lambda      (battery survived)
  //   beta   <- (1-eta) beta   + eta T_{c1} lambda      (transmit epochs only)
  //   omega  <- (1-eta) omega  + eta w_{c1}             (transmit epochs only)
  // Depletion epochs (e_after = 0) skip everything but lambda; overflow-
  // clipped measurements are used as-is.
  void observe(EnergyLevel e_before, EnergyLevel e_mid, EnergyLevel e_after,
               int action, double x, long k);

  double gamma;
  StepSchedule schedule;
  std::vector<double> lambda, alpha, beta, omega, mu;
};

// Reference form of one unconditional update (transmit epoch, no depletion),
//   v' = v + eta ((N_x v)+ + M v + wbar)
// on the stacked vector v = [lambda; alpha; beta; omega], with the shift and
// indicator blocks built explicitly from (c0, c1). Kept as an independently
// constructed cross-check for observe().
std::vector<double> sap_matrix_step(const std::vector<double>& v, int c0, int c1,
                                    double x, double eta, double gamma);

}  // namespace hcensor
