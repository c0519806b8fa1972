#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcensor/pmf.hpp"
#include "hcensor/rng.hpp"

namespace hcensor {

// Number of slots a node stays awake per epoch: fixed n, or geometric on
// {1, 2, ...} with the given mean (mean 1 degenerates to always one slot).
struct SlotModel {
  static SlotModel fixed(int n);
  static SlotModel geometric(double mean);

  bool is_fixed = false;
  int count = 1;
  double mean_slots = 1.0;

  double mean() const { return is_fixed ? count : mean_slots; }
  int sample(RngStream& rng) const;
};

// Per-slot harvested energy. Two shapes:
//  - per_slot_geometric: with probability p a geometric({1,2,...}) amount of
//    conditional mean amount (zero otherwise);
//  - bernoulli_fixed: with probability p exactly amount units (an integer).
// An optional schedule cycles through (duration_slots, amount) regimes,
// overriding the amount parameter slot by slot.
struct HarvestModel {
  enum class Kind { per_slot_geometric, bernoulli_fixed };

  struct Regime {
    long duration_slots;
    double amount;
  };

  Kind kind = Kind::per_slot_geometric;
  double p = 0.0;
  double amount = 0.0;
  std::vector<Regime> schedule;

  static HarvestModel per_slot_geometric(double p_b, double m_b);
  static HarvestModel bernoulli_fixed(double p_h, int e_H);

  bool stationary() const { return schedule.empty(); }
  double amount_at_slot(long slot) const;
  double slot_mean() const { return p * amount; }
  int sample_slot(RngStream& rng) const { return sample_slot_amount(rng, amount); }
  int sample_slot_at(long slot, RngStream& rng) const {
    return sample_slot_amount(rng, amount_at_slot(slot));
  }

  // Exact per-slot distribution; stationary models only.
  IntPmf slot_pmf(double tail_eps) const;

 private:
  int sample_slot_amount(RngStream& rng, double amt) const;
};

// One epoch's sampled energy flows. c0 is the cost paid regardless of the
// decision (sensing slots + reporting - harvest); delta is the extra
// transmission cost, present only when the epoch transmitted.
struct CostSample {
  int c0 = 0;
  std::optional<int> delta;
  int harvested = 0;
  int slots = 1;
  int total() const { return c0 + delta.value_or(0); }
};

// Energy cost model for one epoch:
//   c0 = n_S c_I + c_R - sum of per-slot harvests
//   c1 = c0 + delta,  delta = n_T c_T,  n_T geometric({1,2,...}, success 1-p_fail)
struct CostModel {
  int c_I = 0;
  int c_R = 0;
  int c_T = 0;
  double p_fail = 0.0;
  SlotModel slots = SlotModel::fixed(1);
  HarvestModel harvest;

  CostSample sample_epoch(int action, RngStream& rng) const;

  // Schedule-aware variant; start_slot is the global slot index of the
  // epoch's first slot.
  CostSample sample_epoch_at(long start_slot, int action, RngStream& rng) const;

  // Exact distribution of c0 (action 0) or c1 (action 1). Total truncated
  // tail mass stays below tail_eps (default 1e-9); the result is renormalized.
  // Stationary harvest only.
  IntPmf cost_pmf(int action, double tail_eps = 1e-9) const;

  double delta_mean() const { return c_T / (1.0 - p_fail); }
  double censor_cost_mean() const {
    return slots.mean() * (c_I - harvest.slot_mean()) + c_R;
  }
  double transmit_cost_mean() const { return censor_cost_mean() + delta_mean(); }

  void validate() const;
};

}  // namespace hcensor
