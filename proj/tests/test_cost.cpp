#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>

#include "test_util.hpp"
#include "ucurve/cost.hpp"
#include "ucurve/evaluator.hpp"

using namespace ucurve;
using namespace ucurve::testing;

namespace {

SampleTable table(int n, std::initializer_list<std::pair<const char*, int>> rows) {
  SampleTable t(n);
  for (auto [x, y] : rows) t.add(E(x), y);
  return t;
}

// Straight from the estimator's definition: string keys, explicit frequency
// test P(x) > 1/t, natural-log entropy converted to bits.
double reference_mce(const SampleTable& s, const ElementSet& x) {
  std::map<std::string, std::pair<int, int>> counts;  // value -> (total, ones)
  for (const auto& row : s.rows()) {
    std::string key;
    for (int i = 0; i < s.degree(); ++i)
      if (x.contains(i)) key += ((row.x >> i) & 1u) ? '1' : '0';
    counts[key].first += 1;
    counts[key].second += row.y;
  }
  const double t = static_cast<double>(s.size());
  double singletons = 0.0, sum = 0.0;
  for (const auto& [key, c] : counts) {
    const double p = c.first / t;
    if (c.first == 1) singletons += 1.0;
    if (p > 1.0 / t) {
      double h = 0.0;
      for (double q : {static_cast<double>(c.second) / c.first, 1.0 - static_cast<double>(c.second) / c.first})
        if (q > 0.0) h -= q * std::log(q) / std::log(2.0);
      sum += h * p;
    }
  }
  return singletons / t + sum;
}

}  // namespace

TEST_CASE("subset_sum_cost") {
  const std::vector<std::uint64_t> w{2, 3, 5};
  CHECK(subset_sum_cost(w, 5, E("110")) == 0.0);
  CHECK(subset_sum_cost(w, 5, E("000")) == 5.0);
  CHECK(subset_sum_cost(w, 5, E("111")) == 5.0);
  CHECK(subset_sum_cost(w, 17, E("000")) == 17.0);
  CHECK_THROWS_AS(subset_sum_cost(w, 5, E("11")), ContractViolation);
}

TEST_CASE("subset-sum generator is deterministic and varied") {
  const Instance a = generate_subset_sum_instance(18, 99);
  const Instance b = generate_subset_sum_instance(18, 99);
  const auto& pa = std::get<SubsetSumCosts>(a.payload());
  const auto& pb = std::get<SubsetSumCosts>(b.payload());
  CHECK(pa.weights == pb.weights);
  CHECK(pa.target == pb.target);
  for (auto w : pa.weights) CHECK((w >= 1 && w <= 1000));

  std::set<std::pair<std::vector<std::uint64_t>, std::uint64_t>> distinct;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = generate_subset_sum_instance(18, seed);
    const auto& p = std::get<SubsetSumCosts>(inst.payload());
    distinct.emplace(p.weights, p.target);
  }
  CHECK(distinct.size() >= 99);
}

TEST_CASE("generated subset-sum instances are decomposable") {
  for (int n = 1; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const Instance inst = generate_subset_sum_instance(n, seed, 20);
      CHECK_FALSE(verify_decomposable(inst, ExhaustiveCheck{}).has_value());
    }
}

TEST_CASE("mce_cost hand-derived values") {
  CHECK(mce_cost(table(1, {{"0", 0}, {"0", 1}, {"1", 0}, {"1", 0}}), E("1")) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mce_cost(table(1, {{"0", 0}, {"0", 1}, {"1", 0}}), E("1")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mce_cost(table(2, {{"00", 1}, {"00", 1}, {"10", 1}, {"10", 1}, {"11", 1}, {"11", 1}}), E("11")) == 0.0);
  // The empty feature set sees one value holding every row.
  CHECK(mce_cost(table(1, {{"0", 0}, {"1", 1}}), E("0")) == doctest::Approx(1.0));
  CHECK_THROWS_AS(mce_cost(SampleTable(2), E("10")), ContractViolation);
}

TEST_CASE("mce_cost matches the reference estimator and stays in [0, 1]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const std::size_t rows = 1 + rng() % 40;
    const SampleTable s = generate_sample_table(n, rows, rng(), ElementSet(n, rng()), 0.3);
    for (int k = 0; k < 10; ++k) {
      const ElementSet x(n, rng());
      const double v = mce_cost(s, x);
      CHECK(v == doctest::Approx(reference_mce(s, x)).epsilon(1e-12));
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("verify_decomposable") {
  const Instance constant = Instance::explicit_table(3, std::vector<Cost>(8, 2.0));
  CHECK_FALSE(verify_decomposable(constant, ExhaustiveCheck{}).has_value());
  CHECK_FALSE(verify_decomposable(constant, SampledCheck{50, 1}).has_value());

  // costs indexed by bits: bit 0 = s1. c(00)=0, c(10)=5, c(01)=0, c(11)=0.
  const Instance bump = Instance::explicit_table(2, {0.0, 5.0, 0.0, 0.0});
  const auto w = verify_decomposable(bump, ExhaustiveCheck{});
  REQUIRE(w.has_value());
  CHECK(w->lower == E("00"));
  CHECK(w->middle == E("10"));
  CHECK(w->upper == E("11"));

  const auto sampled = verify_decomposable(bump, SampledCheck{200, 3});
  REQUIRE(sampled.has_value());
  CHECK(sampled->middle == E("10"));

  CHECK_THROWS_AS(verify_decomposable(generate_subset_sum_instance(11, 1), ExhaustiveCheck{}), ContractViolation);
  CHECK_FALSE(verify_decomposable(generate_subset_sum_instance(30, 1), SampledCheck{300, 2}).has_value());
}

TEST_CASE("explicit instances validate their table") {
  CHECK_THROWS_AS(Instance::explicit_table(2, {1.0, 2.0, 3.0}), ContractViolation);
  CHECK_THROWS_AS(Instance::explicit_table(1, {1.0, -2.0}), ContractViolation);
  CHECK_THROWS_AS(Instance::subset_sum({}, 3), ContractViolation);
}

TEST_CASE("evaluator memoizes and counts distinct computations") {
  const Instance inst = Instance::subset_sum({2, 3, 5}, 5);
  int calls = 0;
  CostEvaluator ev(3, [&](const ElementSet& x) {
    ++calls;
    return inst.cost(x);
  });
  CHECK(ev.evaluate(E("110")) == 0.0);
  CHECK(ev.evaluate(E("110")) == 0.0);
  CHECK(ev.computed_nodes() == 1);
  CHECK(calls == 1);
  CHECK_THROWS_AS(ev.evaluate(E("11")), ContractViolation);
}

TEST_CASE("node budget refuses the computation that would exceed it") {
  const Instance inst = Instance::subset_sum({2, 3, 5}, 5);
  CostEvaluator zero(inst, StopCriterion::budget(0));
  CHECK_FALSE(zero.evaluate(E("000")).has_value());
  CHECK(zero.computed_nodes() == 0);
  CHECK(zero.budget_exhausted());

  CostEvaluator three(inst, StopCriterion::budget(3));
  CHECK(three.evaluate(E("000")).has_value());
  CHECK(three.evaluate(E("100")).has_value());
  CHECK(three.evaluate(E("010")).has_value());
  CHECK_FALSE(three.evaluate(E("001")).has_value());
  CHECK(three.computed_nodes() == 3);
  // Cache hits stay available after exhaustion.
  CHECK(three.evaluate(E("100")) == 3.0);
  CHECK_THROWS_AS(three.require(E("111")), SearchStopped);
}

TEST_CASE("cost target flags the first computation at or below it") {
  const Instance inst = Instance::subset_sum({2, 3, 5}, 5);
  CostEvaluator ev(inst, StopCriterion::target(2.0));
  CHECK(ev.evaluate(E("100")) == 3.0);
  CHECK_FALSE(ev.target_reached());
  CHECK(ev.evaluate(E("010")) == 2.0);
  CHECK(ev.target_reached());
  CHECK_THROWS_AS(ev.poll(), SearchStopped);
  CHECK_FALSE(ev.evaluate(E("001")).has_value());
  CHECK(ev.best_elements() == std::vector<ElementSet>{E("010")});
}
