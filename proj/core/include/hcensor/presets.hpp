#pragma once

#include <string>
#include <vector>

#include "hcensor/scenario.hpp"

namespace hcensor {

// Scenario families used by the bundled experiments.

// Moderate-duty family: c_I=1, c_R=2, c_T=4, p_fail=0.4, m_S=2, per-slot
// geometric harvest with p_b=1/3 and mean m_b, exponential(1) importance,
// gamma=0.999. Mean censor cost is 4 - (2/3) m_b.
ScenarioModel moderate_duty_scenario(double m_b, int battery = 100);

// Low-duty family: same but c_T=2, p_b=0.04; rare, large harvests.
// Mean censor cost is 4 - 0.08 m_b.
ScenarioModel low_duty_scenario(double m_b, int battery = 100);

// Bursty-harvest family: c_I=0, c_R=3, c_T=5, p_fail=0.3, one slot per epoch,
// Bernoulli harvest of 30 units with probability p_h, exponential(2)
// importance, gamma=0.999. Mean censor cost is 3 - 30 p_h.
ScenarioModel burst_scenario(double p_h, int battery = 100);

// Bursty family with the refill amount alternating between 5 and 22 every
// 1000 slots (mean censor cost +1.5 / -3.6): the battery is sized to carry
// banked energy across a drain block, and a regime cycle fits inside the
// discounted measurement window.
ScenarioModel alternating_scenario(int battery = 300);

// Multi-hop family: c_I=0, c_R=3, c_T=5, no retries, Bernoulli harvest of 10
// units with probability p_h, exponential(2) importance, gamma=0.999.
ScenarioModel multihop_scenario(double p_h, int battery = 100);

// Sweep grids (chosen so the analytic sweeps cover the interesting censor-
// cost ranges; both are strictly inside the draining regime).
std::vector<double> moderate_duty_mb_grid();  // cbar0 in [-15.33, -0.67]
std::vector<double> low_duty_mb_grid();       // cbar0 in [-15.2, -0.08]
std::vector<double> burst_p_grid();           // p_h in [0.001, 0.5]

struct MultiHopCase {
  std::string name;      // topology spec, e.g. "tree:20"
  double p_h;            // harvest probability
  std::uint64_t layout_seed;
};
std::vector<MultiHopCase> multihop_cases();

// Preset registry for the command line tool.
struct PresetInfo {
  std::string name;
  std::string summary;
};
const std::vector<PresetInfo>& preset_list();

}  // namespace hcensor
