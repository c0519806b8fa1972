#pragma once

#include "hcensor/sim.hpp"
#include "hcensor/topology.hpp"

namespace hcensor {

struct MultiHopOptions {
  double p_gen = 0.1;        // per-slot message generation probability per node
  int initial_battery = -1;  // -1: full
  bool record_battery_trace = false;
};

// Slotted multi-hop run. Every slot each sensor node harvests, pays the idle
// cost, then handles first the messages its children sent last slot and then
// its own possible new message; each handled message is one epoch of that
// node's policy (reception cost c_R, then the transmit decision). A censoring
// relay drops the message; a transmission that runs out of energy drains the
// battery and drops the message. Forwarded messages arrive one hop away next
// slot; the sink is wired and scores arrivals in the second half of the run:
//   v_hat = sum over arrivals gamma^(arrival_slot - horizon/2) x.
// Per-message decisions use the battery level at the node's epoch start, so
// each learner sees the same measurement interface as in the single-hop run.
// Policies: sap, abt, nonselective (the tabular learner is single-hop only).
SimulationOutcome run_multi_hop(const Topology& topology,
                                const ScenarioModel& scenario,
                                const PolicySpec& policy, long horizon_slots,
                                std::uint64_t seed,
                                const MultiHopOptions& options = {});

}  // namespace hcensor
