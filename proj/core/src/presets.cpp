#include "hcensor/presets.hpp"

namespace hcensor {

ScenarioModel moderate_duty_scenario(double m_b, int battery) {
  ScenarioModel s;
  s.battery = battery;
  s.costs.c_I = 1;
  s.costs.c_R = 2;
  s.costs.c_T = 4;
  s.costs.p_fail = 0.4;
  s.costs.slots = SlotModel::geometric(2.0);
  s.costs.harvest = HarvestModel::per_slot_geometric(1.0 / 3.0, m_b);
  s.importance = ImportanceModel::exponential(1.0);
  s.gamma = 0.999;
  return s;
}

ScenarioModel low_duty_scenario(double m_b, int battery) {
  ScenarioModel s = moderate_duty_scenario(m_b, battery);
  s.costs.c_T = 2;
  s.costs.harvest = HarvestModel::per_slot_geometric(0.04, m_b);
  return s;
}

ScenarioModel burst_scenario(double p_h, int battery) {
  ScenarioModel s;
  s.battery = battery;
  s.costs.c_I = 0;
  s.costs.c_R = 3;
  s.costs.c_T = 5;
  s.costs.p_fail = 0.3;
  s.costs.slots = SlotModel::fixed(1);
  s.costs.harvest = HarvestModel::bernoulli_fixed(p_h, 30);
  s.importance = ImportanceModel::exponential(2.0);
  s.gamma = 0.999;
  return s;
}

ScenarioModel alternating_scenario(int battery) {
  ScenarioModel s = burst_scenario(0.3, battery);
  s.costs.harvest.schedule = {{1000, 5.0}, {1000, 22.0}};
  return s;
}

ScenarioModel multihop_scenario(double p_h, int battery) {
  ScenarioModel s;
  s.battery = battery;
  s.costs.c_I = 0;
  s.costs.c_R = 3;
  s.costs.c_T = 5;
  s.costs.p_fail = 0.0;
  s.costs.slots = SlotModel::fixed(1);
  s.costs.harvest = HarvestModel::bernoulli_fixed(p_h, 10);
  s.importance = ImportanceModel::exponential(2.0);
  s.gamma = 0.999;
  return s;
}

std::vector<double> moderate_duty_mb_grid() {
  std::vector<double> g;
  for (int m = 7; m <= 29; m += 2) g.push_back(m);
  return g;
}

std::vector<double> low_duty_mb_grid() {
  return {51, 55, 60, 70, 85, 100, 120, 145, 170, 200, 240};
}

std::vector<double> burst_p_grid() {
  return {0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5};
}

std::vector<MultiHopCase> multihop_cases() {
  return {
      {"tree:20", 0.1, 11},     {"tree:20", 0.5, 11},
      {"tree:10", 0.5, 7},      {"grid:3x3:9", 0.5, 0},
      {"grid:3x3:9", 0.9, 0},   {"grid:3x3:5", 0.9, 0},
  };
}

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> presets = {
      {"thresholds",
       "optimal threshold curves vs battery level for three harvest rates"},
      {"battery-sizes",
       "optimal threshold curves for several battery capacities, with the "
       "energy-balancing threshold as reference"},
      {"value-sweep",
       "analytic value of optimal/balanced/nonselective policies vs mean "
       "censor cost (moderate-duty family)"},
      {"value-sweep-lowduty",
       "same sweep on the low-duty family"},
      {"learner-sweep",
       "simulated value of OPT/SAP/ABT/NS across the bursty-harvest family"},
      {"learning-curves",
       "mean simulated value of OPT/SAP/ABT/Q at several horizons"},
      {"threshold-bands",
       "spread of the learned threshold curve around the optimal one"},
      {"nonstationary",
       "learners under an alternating harvest schedule"},
      {"multihop",
       "relay networks: per-policy delivered value on trees and grids"},
  };
  return presets;
}

}  // namespace hcensor
