#include <benchmark/benchmark.h>

#include "hcensor/markov.hpp"
#include "hcensor/multihop.hpp"
#include "hcensor/presets.hpp"
#include "hcensor/sim.hpp"
#include "hcensor/solve.hpp"
#include "hcensor/topology.hpp"

using namespace hcensor;

namespace {

void BM_ValueIteration(benchmark::State& state) {
  ScenarioModel s = moderate_duty_scenario(10, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SolveResult r = value_iteration(s);
    benchmark::DoNotOptimize(r.lambda.data());
  }
}
BENCHMARK(BM_ValueIteration)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CostPmf(benchmark::State& state) {
  ScenarioModel s = moderate_duty_scenario(10);
  for (auto _ : state) {
    IntPmf pmf = s.costs.cost_pmf(1);
    benchmark::DoNotOptimize(pmf);
  }
}
BENCHMARK(BM_CostPmf);

void BM_StationaryDistribution(benchmark::State& state) {
  ScenarioModel s = moderate_duty_scenario(10);
  SolveResult solved = value_iteration(s);
  auto P = build_transition_matrix(solved.policy, s.costs, s.importance);
  for (auto _ : state) {
    StationaryResult r = stationary_distribution(P);
    benchmark::DoNotOptimize(r.phi.data());
  }
}
BENCHMARK(BM_StationaryDistribution)->Unit(benchmark::kMillisecond);

void BM_SingleHopEpochs(benchmark::State& state) {
  ScenarioModel s = moderate_duty_scenario(10);
  const bool learner = state.range(0) != 0;
  const PolicySpec spec = learner
                              ? PolicySpec::sap(StepSchedule::decaying(1e-3))
                              : PolicySpec::nonselective();
  const long horizon = 20000;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    SimulationOutcome out = run_single_hop(s, spec, horizon, seed++);
    benchmark::DoNotOptimize(out.v_hat);
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_SingleHopEpochs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MultiHopSlots(benchmark::State& state) {
  ScenarioModel s = multihop_scenario(0.5);
  Topology topo = parse_topology("tree:20", 11);
  const PolicySpec spec = PolicySpec::sap(StepSchedule::decaying(1e-3));
  const long horizon = 20000;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    SimulationOutcome out = run_multi_hop(topo, s, spec, horizon, seed++);
    benchmark::DoNotOptimize(out.v_hat);
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_MultiHopSlots)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
