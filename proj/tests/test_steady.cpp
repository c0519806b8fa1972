#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "hcensor/errors.hpp"
#include "hcensor/markov.hpp"
#include "hcensor/performance.hpp"
#include "hcensor/solve.hpp"

using namespace hcensor;

namespace {

// c0 = -1 and c1 = +1 deterministically
CostModel bounce_costs() {
  CostModel c;
  c.c_I = 0;
  c.c_R = 0;
  c.c_T = 2;
  c.p_fail = 0.0;
  c.slots = SlotModel::fixed(1);
  c.harvest = HarvestModel::bernoulli_fixed(1.0, 1);
  return c;
}

void check_phi(const std::vector<std::vector<double>>& P,
               const std::vector<double>& phi) {
  double sum = 0.0;
  for (double v : phi) {
    CHECK(v >= -1e-15);
    sum += v;
  }
  CHECK(std::abs(sum - 1.0) < 1e-10);
  for (size_t j = 0; j < phi.size(); ++j) {
    double col = 0.0;
    for (size_t i = 0; i < phi.size(); ++i) col += phi[i] * P[i][j];
    CHECK(std::abs(col - phi[j]) < 1e-8);
  }
}

}  // namespace

TEST_CASE("transition rows mix the two cost laws by the censor probability") {
  auto importance = ImportanceModel::empirical({{1.0, 0.5}, {3.0, 0.5}});
  ThresholdPolicy p;
  p.mu = {0.0, 2.0, 0.0};
  p.w = {0.0, 1.0, 1.0};
  auto P = build_transition_matrix(p, bounce_costs(), importance);
  REQUIRE(P.size() == 3);

  // e=1 splits half censor (recharge to 2) half transmit (drain to 0)
  CHECK(P[1][0] == doctest::Approx(0.5));
  CHECK(P[1][1] == doctest::Approx(0.0));
  CHECK(P[1][2] == doctest::Approx(0.5));
  // e=0 cannot transmit, recharges; e=2 transmits everything
  CHECK(P[0][1] == doctest::Approx(1.0));
  CHECK(P[2][1] == doctest::Approx(1.0));

  for (const auto& row : P) {
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }

  auto st = stationary_distribution(P);
  CHECK(st.phi[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(st.phi[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(st.phi[2] == doctest::Approx(0.25).epsilon(1e-9));
  check_phi(P, st.phi);
}

TEST_CASE("pure recharge saturates and pins the stationary mass at the cap") {
  auto importance = ImportanceModel::exponential(1.0);
  ThresholdPolicy never;
  never.mu = {std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity(),
              std::numeric_limits<double>::infinity()};
  never.w = {0.0, 1.0, 1.0};
  auto P = build_transition_matrix(never, bounce_costs(), importance);
  CHECK(P[2][2] == doctest::Approx(1.0));
  auto st = stationary_distribution(P);
  CHECK(st.phi[2] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("stationary distribution hand cases") {
  std::vector<std::vector<double>> swap2 = {{0.0, 1.0}, {1.0, 0.0}};
  auto st = stationary_distribution(swap2);
  CHECK(st.phi[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(st.phi[1] == doctest::Approx(0.5).epsilon(1e-10));

  // identity chain: every distribution is stationary; the fallback documents
  // the uniform-start answer
  std::vector<std::vector<double>> id3 = {
      {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  auto uni = stationary_distribution(id3);
  CHECK(uni.method == StationaryMethod::power_iteration);
  for (double v : uni.phi) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("stationary properties across solved policies") {
  for (double gamma : {0.9, 0.99}) {
    ScenarioModel s;
    s.battery = 25;
    s.costs.c_I = 1;
    s.costs.c_R = 1;
    s.costs.c_T = 2;
    s.costs.p_fail = 0.3;
    s.costs.slots = SlotModel::geometric(2.0);
    s.costs.harvest = HarvestModel::per_slot_geometric(0.4, 3.0);
    s.importance = ImportanceModel::exponential(1.0);
    s.gamma = gamma;
    auto r = value_iteration(s);
    auto P = build_transition_matrix(r.policy, s.costs, s.importance);
    for (const auto& row : P) {
      double sum = 0.0;
      for (double v : row) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    auto st = stationary_distribution(P);
    check_phi(P, st.phi);
    CHECK(st.residual < 1e-8);
  }
}

TEST_CASE("balanced threshold quantile") {
  auto exp1 = ImportanceModel::exponential(1.0);

  // symmetric balance: rho = 1/2, threshold at the median
  CostModel sym;
  sym.c_I = 0;
  sym.c_R = 1;
  sym.c_T = 4;
  sym.p_fail = 0.0;
  sym.slots = SlotModel::fixed(1);
  sym.harvest = HarvestModel::per_slot_geometric(1.0, 3.0);
  CHECK(sym.censor_cost_mean() == doctest::Approx(-2.0));
  CHECK(sym.transmit_cost_mean() == doctest::Approx(2.0));
  auto b = balanced_threshold(sym, exp1);
  CHECK(!b.never_balances);
  CHECK(b.rho == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.mu_bar == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // cbar0 = -3.4 with E{delta} = 20/3 puts rho at 0.49 exactly
  CostModel duty;
  duty.c_I = 1;
  duty.c_R = 2;
  duty.c_T = 4;
  duty.p_fail = 0.4;
  duty.slots = SlotModel::geometric(2.0);
  duty.harvest = HarvestModel::per_slot_geometric(1.0 / 3.0, 11.1);
  CHECK(duty.censor_cost_mean() == doctest::Approx(-3.4).epsilon(1e-12));
  auto d = balanced_threshold(duty, exp1);
  CHECK(d.rho == doctest::Approx(0.49).epsilon(1e-12));
  CHECK(d.mu_bar == doctest::Approx(0.6733445532637653).epsilon(1e-9));

  // rho climbs toward 1 as the idle drift approaches balance from below
  duty.harvest = HarvestModel::per_slot_geometric(1.0 / 3.0, 6.1);
  CHECK(duty.censor_cost_mean() == doctest::Approx(-1.0 / 15).epsilon(1e-9));
  auto near = balanced_threshold(duty, exp1);
  CHECK(near.rho > 0.98);
  CHECK(near.mu_bar > d.mu_bar);
}

TEST_CASE("balanced threshold degenerate regimes") {
  auto exp1 = ImportanceModel::exponential(1.0);

  CostModel flood;  // transmitting still gains energy on average
  flood.c_I = 0;
  flood.c_R = 0;
  flood.c_T = 2;
  flood.p_fail = 0.0;
  flood.slots = SlotModel::fixed(1);
  flood.harvest = HarvestModel::per_slot_geometric(1.0, 10.0);
  auto f = balanced_threshold(flood, exp1);
  CHECK(!f.never_balances);
  CHECK(f.mu_bar == doctest::Approx(0.0));

  CostModel drain;  // no harvest: not even full censoring balances
  drain.c_I = 1;
  drain.c_R = 0;
  drain.c_T = 1;
  drain.slots = SlotModel::fixed(1);
  drain.harvest = HarvestModel::per_slot_geometric(0.0, 1.0);
  auto d = balanced_threshold(drain, exp1);
  CHECK(d.never_balances);
  CHECK(std::isinf(d.mu_bar));
}

TEST_CASE("free transmission puts the analytic value at its ceiling") {
  ScenarioModel s;
  s.battery = 10;
  s.costs.c_I = 0;
  s.costs.c_R = 0;
  s.costs.c_T = 0;
  s.costs.p_fail = 0.0;
  s.costs.slots = SlotModel::fixed(1);
  s.costs.harvest = HarvestModel::per_slot_geometric(0.0, 1.0);
  s.importance = ImportanceModel::exponential(1.0);
  s.gamma = 0.999;

  auto ns = nonselective_performance(s);
  CHECK(ns.value == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(ns.transmitted_rate == doctest::Approx(1.0).epsilon(1e-12));

  // with W = 1 everywhere a constant-ratio policy evaluates in closed form
  auto w = success_probability(s.costs, s.battery);
  for (double v : w) CHECK(v == doctest::Approx(1.0));
  for (double ratio : {0.5, 1.0, 2.0}) {
    auto p = constant_ratio_policy(ratio, w);
    auto perf = expected_performance(p, s);
    CHECK(perf.value ==
          doctest::Approx(s.importance.transmitted_mean(ratio) / (1 - s.gamma))
              .epsilon(1e-9));
  }
}

TEST_CASE("balanced and nonselective coincide when the balance point is zero") {
  ScenarioModel s;
  s.battery = 15;
  s.costs.c_I = 0;
  s.costs.c_R = 0;
  s.costs.c_T = 2;
  s.costs.p_fail = 0.0;
  s.costs.slots = SlotModel::fixed(1);
  s.costs.harvest = HarvestModel::per_slot_geometric(1.0, 10.0);
  s.importance = ImportanceModel::exponential(1.0);
  s.gamma = 0.99;
  auto vb = balanced_performance(s);
  auto vn = nonselective_performance(s);
  CHECK(vb.value == doctest::Approx(vn.value).epsilon(1e-12));
}
