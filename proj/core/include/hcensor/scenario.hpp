#pragma once

#include <map>
#include <string>

#include "hcensor/cost.hpp"
#include "hcensor/importance.hpp"

namespace hcensor {

// A complete sensing environment: battery size, epoch cost model, message
// importance distribution, discount.
struct ScenarioModel {
  int battery = 1;
  CostModel costs;
  ImportanceModel importance = ImportanceModel::exponential(1.0);
  double gamma = 0.9;

  void validate() const;
};

// Key-value scenario text. Keys:
//   battery.capacity   int >= 1
//   cost.c_I cost.c_R cost.c_T   nonnegative integers
//   cost.p_fail        real in [0,1)
//   cost.m_S           mean slots per epoch, >= 1 (geometric)
//   harvest.kind       per_slot_geometric | bernoulli_fixed
//   harvest.p_b        harvest probability, both kinds
//   harvest.m_b        conditional mean amount (per_slot_geometric)
//   harvest.e_H        fixed amount (bernoulli_fixed)
//   harvest.schedule   comma list of duration:amount regime entries (slots)
//   importance.kind    exponential | empirical
//   importance.mean    exponential mean
//   importance.atoms   comma list of value:probability entries
//   gamma              real in [0,1)
// Lines are `key = value`; '#' starts a comment. Unknown keys are rejected,
// and energy quantities must be integers.
ScenarioModel parse_scenario_text(const std::string& text);
ScenarioModel load_scenario_file(const std::string& path);
std::string serialize_scenario(const ScenarioModel& s);

// Flat key-value view used for manifests.
std::map<std::string, std::string> scenario_keys(const ScenarioModel& s);

}  // namespace hcensor
