#include "hcensor/cost.hpp"

#include <cmath>

#include "hcensor/errors.hpp"

namespace hcensor {

SlotModel SlotModel::fixed(int n) {
  if (n < 1) throw ConfigError("slots: fixed count must be >= 1");
  SlotModel s;
  s.is_fixed = true;
  s.count = n;
  s.mean_slots = n;
  return s;
}

SlotModel SlotModel::geometric(double mean) {
  if (!(mean >= 1.0)) throw ConfigError("slots: geometric mean must be >= 1");
  SlotModel s;
  s.is_fixed = false;
  s.mean_slots = mean;
  return s;
}

int SlotModel::sample(RngStream& rng) const {
  if (is_fixed) return count;
  return rng.geometric_from_one(1.0 / mean_slots);
}

HarvestModel HarvestModel::per_slot_geometric(double p_b, double m_b) {
  if (p_b < 0.0 || p_b > 1.0) throw ConfigError("harvest: p_b outside [0,1]");
  if (p_b > 0.0 && !(m_b >= 1.0))
    throw ConfigError("harvest: conditional mean m_b must be >= 1");
  HarvestModel h;
  h.kind = Kind::per_slot_geometric;
  h.p = p_b;
  h.amount = m_b;
  return h;
}

HarvestModel HarvestModel::bernoulli_fixed(double p_h, int e_H) {
  if (p_h < 0.0 || p_h > 1.0) throw ConfigError("harvest: p_h outside [0,1]");
  if (p_h > 0.0 && e_H < 0) throw ConfigError("harvest: e_H must be >= 0");
  HarvestModel h;
  h.kind = Kind::bernoulli_fixed;
  h.p = p_h;
  h.amount = e_H;
  return h;
}

double HarvestModel::amount_at_slot(long slot) const {
  if (schedule.empty()) return amount;
  long period = 0;
  for (const Regime& r : schedule) period += r.duration_slots;
  long t = slot % period;
  for (const Regime& r : schedule) {
    if (t < r.duration_slots) return r.amount;
    t -= r.duration_slots;
  }
  return schedule.back().amount;
}

int HarvestModel::sample_slot_amount(RngStream& rng, double amt) const {
  // Draw order (bernoulli, then conditional amount) is part of the
  // reproducibility contract.
  if (p <= 0.0) return 0;
  bool hit = rng.bernoulli(p);
  if (kind == Kind::per_slot_geometric) {
    if (!hit) return 0;
    return rng.geometric_from_one(1.0 / amt);
  }
  return hit ? static_cast<int>(amt) : 0;
}

IntPmf HarvestModel::slot_pmf(double tail_eps) const {
  if (!stationary()) throw ConfigError("harvest: pmf undefined for scheduled model");
  if (p <= 0.0) return IntPmf::delta(0);
  IntPmf out;
  if (kind == Kind::bernoulli_fixed) {
    int e_H = static_cast<int>(amount);
    out.min = 0;
    out.p.assign(static_cast<size_t>(e_H) + 1, 0.0);
    out.p[0] = 1.0 - p;
    out.p[static_cast<size_t>(e_H)] += p;
    return out;
  }
  IntPmf cond = geometric_from_one_pmf(1.0 / amount, tail_eps);
  out.min = 0;
  out.p.assign(cond.p.size() + 1, 0.0);
  out.p[0] = 1.0 - p;
  for (size_t k = 0; k < cond.p.size(); ++k) out.p[k + 1] += p * cond.p[k];
  return out;
}

CostSample CostModel::sample_epoch(int action, RngStream& rng) const {
  return sample_epoch_at(0, action, rng);
}

CostSample CostModel::sample_epoch_at(long start_slot, int action,
                                      RngStream& rng) const {
  CostSample s;
  s.slots = slots.sample(rng);
  for (int k = 0; k < s.slots; ++k)
    s.harvested += harvest.sample_slot_at(start_slot + k, rng);
  s.c0 = s.slots * c_I + c_R - s.harvested;
  // The retry count is drawn every epoch so the stream position does not
  // depend on the decision; censor epochs discard it.
  int n_T = rng.geometric_from_one(1.0 - p_fail);
  if (action == 1) s.delta = n_T * c_T;
  return s;
}

IntPmf CostModel::cost_pmf(int action, double tail_eps) const {
  validate();
  if (!harvest.stationary())
    throw ConfigError("cost_pmf: undefined for non-stationary harvest");
  const double sub_eps = tail_eps * 1e-3;

  // per-slot net drain c_I - b, then compounded over the slot count
  IntPmf slot_net = harvest.slot_pmf(sub_eps);
  // negate support: value v becomes c_I - v
  IntPmf drain;
  drain.min = c_I - slot_net.max();
  drain.p.assign(slot_net.p.size(), 0.0);
  for (int v = slot_net.min; v <= slot_net.max(); ++v)
    drain.p[static_cast<size_t>(c_I - v - drain.min)] = slot_net.at(v);

  IntPmf c0;
  if (slots.is_fixed) {
    c0 = IntPmf::delta(0);
    c0.min = 0;
    for (int k = 0; k < slots.count; ++k) {
      c0 = convolve(c0, drain);
      c0.trim(sub_eps);
    }
    c0.normalize();
  } else {
    c0 = compound_geometric(drain, slots.mean_slots, sub_eps);
  }
  c0.min += c_R;

  if (action == 0) {
    c0.trim(tail_eps * 0.5);
    c0.normalize();
    return c0;
  }

  // delta = n_T c_T: geometric trial count stretched by c_T
  IntPmf trials = geometric_from_one_pmf(1.0 - p_fail, sub_eps);
  IntPmf delta;
  delta.min = c_T;
  delta.p.assign(static_cast<size_t>((trials.max() - 1) * c_T) + 1, 0.0);
  for (int n = 1; n <= trials.max(); ++n)
    delta.p[static_cast<size_t>((n - 1) * c_T)] += trials.at(n);  // c_T=0 collapses

  IntPmf c1 = convolve(c0, delta);
  c1.trim(tail_eps * 0.5);
  c1.normalize();
  return c1;
}

void CostModel::validate() const {
  if (c_I < 0 || c_R < 0 || c_T < 0)
    throw ConfigError("cost: c_I, c_R, c_T must be >= 0");
  if (p_fail < 0.0 || p_fail >= 1.0)
    throw ConfigError("cost: p_fail outside [0,1)");
  for (const HarvestModel::Regime& r : harvest.schedule) {
    if (r.duration_slots < 1)
      throw ConfigError("harvest: schedule duration must be >= 1 slot");
    if (harvest.kind == HarvestModel::Kind::per_slot_geometric && harvest.p > 0.0 &&
        !(r.amount >= 1.0))
      throw ConfigError("harvest: scheduled m_b must be >= 1");
    if (harvest.kind == HarvestModel::Kind::bernoulli_fixed &&
        (r.amount < 0.0 || r.amount != std::floor(r.amount)))
      throw ConfigError("harvest: scheduled e_H must be a nonnegative integer");
  }
}

}  // namespace hcensor
