#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "hcensor/cost.hpp"
#include "hcensor/energy.hpp"
#include "hcensor/errors.hpp"
#include "hcensor/importance.hpp"
#include "hcensor/pmf.hpp"
#include "hcensor/rng.hpp"
#include "hcensor/scenario.hpp"

using namespace hcensor;

TEST_CASE("clip saturates at both ends and is idempotent") {
  CHECK(clip(105, 100) == 100);
  CHECK(clip(-3, 100) == 0);
  CHECK(clip(50, 100) == 50);
  for (long long e = -10; e <= 110; ++e)
    CHECK(clip(clip(e, 100), 100) == clip(e, 100));
}

TEST_CASE("exponential importance stats") {
  auto m = ImportanceModel::exponential(1.0);
  auto s0 = importance_stats(m, 0.0);
  CHECK(s0.cdf == doctest::Approx(0.0));
  CHECK(s0.mean_excess == doctest::Approx(1.0));
  CHECK(s0.transmitted_mean == doctest::Approx(1.0));

  auto s1 = importance_stats(m, 1.0);
  CHECK(s1.cdf == doctest::Approx(0.6321205588285577).epsilon(1e-12));
  CHECK(s1.mean_excess == doctest::Approx(0.36787944117144233).epsilon(1e-12));
  CHECK(s1.transmitted_mean == doctest::Approx(0.7357588823428846).epsilon(1e-12));

  // g(a) = (1+a) e^-a for unit mean
  for (double a : {0.25, 0.5, 2.0, 4.0})
    CHECK(m.transmitted_mean(a) == doctest::Approx((1 + a) * std::exp(-a)));

  CHECK(m.quantile(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(ImportanceModel::exponential(3.0).quantile(0.5) ==
        doctest::Approx(3.0 * std::log(2.0)));
  CHECK(std::isinf(m.quantile(1.0)));
}

TEST_CASE("empirical importance stats use the transmit-on-equality split") {
  auto m = ImportanceModel::empirical({{1.0, 0.5}, {3.0, 0.5}});
  auto s = importance_stats(m, 2.0);
  CHECK(s.cdf == doctest::Approx(0.5));
  CHECK(s.mean_excess == doctest::Approx(0.5));
  CHECK(s.transmitted_mean == doctest::Approx(1.5));

  // threshold sitting on an atom: the atom itself still transmits
  CHECK(m.transmitted_mean(3.0) == doctest::Approx(1.5));
  CHECK(m.cdf(3.0) == doctest::Approx(1.0));
  CHECK(m.cdf_strict(3.0) == doctest::Approx(0.5));
  CHECK(m.mean_excess(3.0) == doctest::Approx(0.0));

  CHECK(m.quantile(0.25) == doctest::Approx(1.0));
  CHECK(m.quantile(0.5) == doctest::Approx(1.0));
  CHECK(m.quantile(0.75) == doctest::Approx(3.0));

  CHECK_THROWS_AS(ImportanceModel::empirical({{1.0, 0.6}, {3.0, 0.5}}),
                  ConfigError);
}

TEST_CASE("h nonincreasing and convex, g nonincreasing") {
  auto models = {ImportanceModel::exponential(2.0),
                 ImportanceModel::empirical({{0.5, 0.3}, {1.5, 0.4}, {4.0, 0.3}})};
  for (const auto& m : models) {
    double prev_h = m.mean_excess(0.0), prev_g = m.transmitted_mean(0.0);
    double prev_slope = -1e300;
    double step = 0.08;
    for (int i = 1; i <= 100; ++i) {
      double a = step * i;
      double h = m.mean_excess(a), g = m.transmitted_mean(a);
      CHECK(h <= prev_h + 1e-12);
      CHECK(g <= prev_g + 1e-12);
      double slope = (h - prev_h) / step;
      CHECK(slope >= prev_slope - 1e-9);
      prev_h = h;
      prev_g = g;
      prev_slope = slope;
    }
  }
}

TEST_CASE("deterministic epoch cost") {
  CostModel c;
  c.c_I = 1;
  c.c_R = 2;
  c.c_T = 0;
  c.slots = SlotModel::fixed(2);
  c.harvest = HarvestModel::per_slot_geometric(0.0, 1.0);
  RngStream rng(7);
  auto s = c.sample_epoch(0, rng);
  CHECK(s.c0 == 4);
  CHECK(!s.delta.has_value());
  auto pmf = c.cost_pmf(0);
  CHECK(pmf.at(4) == doctest::Approx(1.0));
  CHECK(pmf.mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("geometric slot count gives a geometric idle-cost tail") {
  CostModel c;
  c.c_I = 1;
  c.c_R = 2;
  c.c_T = 4;
  c.p_fail = 0.4;
  c.slots = SlotModel::geometric(2.0);
  c.harvest = HarvestModel::per_slot_geometric(0.0, 1.0);

  CHECK(c.censor_cost_mean() == doctest::Approx(4.0));
  CHECK(c.delta_mean() == doctest::Approx(4.0 / 0.6));

  auto pmf = c.cost_pmf(0);
  // P{c0 = k + 2} = (1/2)^k for k >= 1
  for (int k = 1; k <= 20; ++k)
    CHECK(pmf.at(k + 2) == doctest::Approx(std::pow(0.5, k)).epsilon(1e-9));
  CHECK(pmf.mean() == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("harvesting shifts the censor cost mean") {
  CostModel c;
  c.c_I = 1;
  c.c_R = 2;
  c.c_T = 4;
  c.p_fail = 0.4;
  c.slots = SlotModel::geometric(2.0);
  c.harvest = HarvestModel::per_slot_geometric(1.0 / 3.0, 10.0);
  CHECK(c.censor_cost_mean() == doctest::Approx(4.0 - 2.0 * 10.0 / 3.0));
  auto pmf = c.cost_pmf(0);
  CHECK(pmf.mean() == doctest::Approx(c.censor_cost_mean()).epsilon(1e-6));
  CHECK(pmf.mass() == doctest::Approx(1.0).epsilon(1e-9));

  auto pmf1 = c.cost_pmf(1);
  CHECK(pmf1.mean() == doctest::Approx(c.transmit_cost_mean()).epsilon(1e-6));
}

TEST_CASE("bernoulli harvest produces a two-atom censor cost") {
  CostModel c;
  c.c_I = 0;
  c.c_R = 3;
  c.c_T = 5;
  c.p_fail = 0.3;
  c.slots = SlotModel::fixed(1);
  c.harvest = HarvestModel::bernoulli_fixed(0.3, 30);
  auto pmf = c.cost_pmf(0);
  CHECK(pmf.at(-27) == doctest::Approx(0.3));
  CHECK(pmf.at(3) == doctest::Approx(0.7));
  CHECK(pmf.mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sample mean tracks the exact pmf mean") {
  CostModel c;
  c.c_I = 1;
  c.c_R = 2;
  c.c_T = 4;
  c.p_fail = 0.4;
  c.slots = SlotModel::geometric(2.0);
  c.harvest = HarvestModel::per_slot_geometric(1.0 / 3.0, 10.0);

  for (int action : {0, 1}) {
    auto pmf = c.cost_pmf(action);
    RngStream rng(42 + action);
    const long n = 1000000;
    double acc = 0.0, acc2 = 0.0;
    for (long i = 0; i < n; ++i) {
      auto s = c.sample_epoch(action, rng);
      double v = s.total();
      acc += v;
      acc2 += v * v;
    }
    double mean = acc / n;
    double var = acc2 / n - mean * mean;
    double se = std::sqrt(var / n);
    CHECK(std::abs(mean - pmf.mean()) < 4.0 * se);
  }
}

TEST_CASE("harvest schedule cycles per slot") {
  auto h = HarvestModel::bernoulli_fixed(0.3, 5);
  h.schedule = {{2, 5.0}, {3, 30.0}};
  CHECK(h.amount_at_slot(0) == doctest::Approx(5.0));
  CHECK(h.amount_at_slot(1) == doctest::Approx(5.0));
  CHECK(h.amount_at_slot(2) == doctest::Approx(30.0));
  CHECK(h.amount_at_slot(4) == doctest::Approx(30.0));
  CHECK(h.amount_at_slot(5) == doctest::Approx(5.0));
  CHECK(h.amount_at_slot(7) == doctest::Approx(30.0));
  CHECK(!h.stationary());

  CostModel c;
  c.harvest = h;
  CHECK_THROWS_AS(c.cost_pmf(0), ConfigError);
}

TEST_CASE("rng streams are deterministic and well ranged") {
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));

  RngStream a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    double u = a.u01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.u01());
  }
  RngStream g(5);
  double acc = 0;
  for (int i = 0; i < 200000; ++i) {
    int n = g.geometric_from_one(0.5);
    CHECK(n >= 1);
    acc += n;
  }
  CHECK(acc / 200000 == doctest::Approx(2.0).epsilon(0.02));

  RngStream e(6);
  double eacc = 0;
  for (int i = 0; i < 200000; ++i) eacc += e.exponential(3.0);
  CHECK(eacc / 200000 == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("scenario text round-trips") {
  std::string text = R"(# comment line
battery.capacity = 100
cost.c_I = 1
cost.c_R = 2
cost.c_T = 4
cost.p_fail = 0.4
cost.m_S = 2
harvest.kind = per_slot_geometric
harvest.p_b = 0.3333333333333333
harvest.m_b = 10
importance.kind = exponential
importance.mean = 1
gamma = 0.999
)";
  auto s = parse_scenario_text(text);
  CHECK(s.battery == 100);
  CHECK(s.costs.c_T == 4);
  CHECK(s.costs.harvest.p == doctest::Approx(1.0 / 3.0));
  auto again = parse_scenario_text(serialize_scenario(s));
  CHECK(again.battery == s.battery);
  CHECK(again.gamma == doctest::Approx(s.gamma));
  CHECK(again.costs.harvest.p == doctest::Approx(s.costs.harvest.p));
  CHECK(serialize_scenario(again) == serialize_scenario(s));
}

TEST_CASE("scenario parser rejects bad input") {
  auto with = [](const std::string& patch) {
    return "battery.capacity = 10\ncost.c_R = 1\ncost.c_T = 1\n"
           "harvest.kind = bernoulli_fixed\nharvest.p_b = 0.5\n"
           "harvest.e_H = 2\nimportance.kind = exponential\n"
           "importance.mean = 1\ngamma = 0.9\n" + patch;
  };
  CHECK_NOTHROW(parse_scenario_text(with("")));
  CHECK_THROWS_AS(parse_scenario_text(with("whatever = 3\n")), ConfigError);
  CHECK_THROWS_AS(parse_scenario_text(with("battery.capacity = 50\n")),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario_text(with("cost.c_I = -1\n")), ConfigError);
  CHECK_THROWS_AS(parse_scenario_text(with("cost.c_I = 2.5\n")), ConfigError);
  CHECK_THROWS_AS(parse_scenario_text("battery.capacity = 2.5\n"), ConfigError);
  // energy quantities must be integers
  CHECK_THROWS_AS(parse_scenario_text("battery.capacity = 10\ncost.c_R = 1\n"
                                      "cost.c_T = 1\nharvest.kind = "
                                      "bernoulli_fixed\nharvest.p_b = 0.3\n"
                                      "harvest.e_H = 2.5\nimportance.kind = "
                                      "exponential\nimportance.mean = 1\n"
                                      "gamma = 0.9\n"),
                  ConfigError);
  ScenarioModel s;
  s.gamma = 1.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.gamma = 0.0;  // myopic limit stays legal
  CHECK_NOTHROW(s.validate());
  s.gamma = -0.1;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("empirical atoms parse from scenario text") {
  std::string text = R"(battery.capacity = 5
cost.c_I = 1
cost.c_R = 0
cost.c_T = 1
cost.p_fail = 0
cost.m_S = 1
harvest.kind = bernoulli_fixed
harvest.p_b = 1
harvest.e_H = 1
importance.kind = empirical
importance.atoms = 1:0.25, 2:0.5, 3:0.25
gamma = 0.9
)";
  auto s = parse_scenario_text(text);
  REQUIRE(s.importance.kind() == ImportanceModel::Kind::empirical);
  REQUIRE(s.importance.atoms().size() == 3);
  CHECK(s.importance.atoms()[1].first == doctest::Approx(2.0));
  CHECK(s.importance.atoms()[1].second == doctest::Approx(0.5));
  auto round = parse_scenario_text(serialize_scenario(s));
  CHECK(round.importance.atoms() == s.importance.atoms());
}

TEST_CASE("pmf helpers") {
  IntPmf d = IntPmf::delta(4);
  CHECK(d.mean() == doctest::Approx(4.0));
  CHECK(d.cdf(3) == doctest::Approx(0.0));
  CHECK(d.cdf(4) == doctest::Approx(1.0));

  IntPmf a{0, {0.5, 0.5}};         // uniform {0,1}
  IntPmf b{1, {0.5, 0.5}};         // uniform {1,2}
  auto c = convolve(a, b);
  CHECK(c.min == 1);
  CHECK(c.at(1) == doctest::Approx(0.25));
  CHECK(c.at(2) == doctest::Approx(0.5));
  CHECK(c.at(3) == doctest::Approx(0.25));
  CHECK(c.mean() == doctest::Approx(a.mean() + b.mean()));

  auto g = geometric_from_one_pmf(0.5, 1e-12);
  CHECK(g.at(1) == doctest::Approx(0.5));
  CHECK(g.at(3) == doctest::Approx(0.125));
  CHECK(g.mean() == doctest::Approx(2.0).epsilon(1e-9));

  // N=1 collapses the compound distribution to the step itself
  auto one = compound_geometric(b, 1.0, 1e-12);
  CHECK(one.at(1) == doctest::Approx(0.5));
  CHECK(one.at(2) == doctest::Approx(0.5));
}
