#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "test_util.hpp"
#include "ucurve/instance_io.hpp"
#include "ucurve/oracle.hpp"
#include "ucurve/ucs.hpp"

using namespace ucurve;
using namespace ucurve::testing;

TEST_CASE("exhaustive_solve") {
  SUBCASE("constant cost") {
    const Instance inst = by_cardinality(3, [](int) { return 1.0; });
    CostEvaluator ev(inst);
    const auto r = exhaustive_solve(ev);
    CHECK(r.algorithm == "exhaustive");
    CHECK(r.minima.size() == 8);
  }
  SUBCASE("two features") {
    const Instance inst = Instance::explicit_table(2, {2, 1, 3, 2});
    CostEvaluator ev(inst);
    CHECK(exhaustive_solve(ev).minima == std::vector<ElementSet>{E("10")});
  }
  SUBCASE("subset sum") {
    const Instance inst = Instance::subset_sum({2, 3, 5}, 5);
    CostEvaluator ev(inst);
    CHECK(exhaustive_solve(ev).minima == std::vector<ElementSet>{E("001"), E("110")});
  }
  SUBCASE("counts every subset") {
    for (int n = 1; n <= 12; ++n) {
      const Instance inst = generate_subset_sum_instance(n, n);
      CostEvaluator ev(inst);
      CHECK(exhaustive_solve(ev).computed_nodes == (std::uint64_t{1} << n));
    }
  }
}

TEST_CASE("random_decomposable_instance passes verification") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const Instance inst = random_decomposable_instance(n, seed);
    CHECK(inst.kind() == CostKind::explicit_table);
    CHECK_FALSE(verify_decomposable(inst, ExhaustiveCheck{}).has_value());
  }
}

TEST_CASE("random_plateau_instance passes verification") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const Instance inst = random_plateau_instance(n, seed);
    CHECK_FALSE(verify_decomposable(inst, ExhaustiveCheck{}).has_value());
  }
  CHECK_THROWS_AS(random_plateau_instance(11, 0), ContractViolation);
}

TEST_CASE("legacy U-Curve") {
  SUBCASE("one feature") {
    const Instance inst = Instance::explicit_table(1, {3, 1});
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      CostEvaluator ev(inst);
      CHECK(legacy_ucurve_solve(ev, seed).best_cost == 1.0);
    }
  }
  SUBCASE("two features") {
    const Instance inst = Instance::explicit_table(2, {2, 1, 3, 2});
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      CostEvaluator ev(inst);
      const auto r = legacy_ucurve_solve(ev, seed);
      CHECK(r.algorithm == "ucurve-legacy");
      CHECK(r.minima == std::vector<ElementSet>{E("10")});
    }
  }
  SUBCASE("never below the optimum") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + static_cast<int>(rng() % 7);
      const Instance inst = trial % 2 ? random_plateau_instance(n, rng()) : random_decomposable_instance(n, rng());
      CostEvaluator a(inst), b(inst);
      const auto legacy = legacy_ucurve_solve(a, rng());
      CHECK(legacy.best_cost >= exhaustive_solve(b).best_cost);
      CHECK(legacy.computed_nodes <= (std::uint64_t{1} << n));
    }
  }
}

TEST_CASE("find_counterexample") {
  CHECK_FALSE(find_counterexample(5, 0, 7).has_value());
  CHECK_THROWS_AS(find_counterexample(3, 10, 7), ContractViolation);
  CHECK_THROWS_AS(find_counterexample(9, 10, 7), ContractViolation);

  const auto found = find_counterexample(5, 10000, 7);
  REQUIRE(found.has_value());
  CHECK_FALSE(verify_decomposable(found->instance, ExhaustiveCheck{}).has_value());
  CostEvaluator legacy_ev(found->instance), oracle_ev(found->instance), ucs_ev(found->instance);
  const auto legacy = legacy_ucurve_solve(legacy_ev, found->legacy_seed);
  const auto oracle = exhaustive_solve(oracle_ev);
  CHECK(legacy.best_cost == found->legacy_cost);
  CHECK(oracle.best_cost == found->optimum);
  CHECK(legacy.best_cost > oracle.best_cost);
  CHECK(ucs_solve(ucs_ev).best_cost == oracle.best_cost);

  const auto again = find_counterexample(5, 10000, 7);
  REQUIRE(again.has_value());
  CHECK(again->trial == found->trial);
}

TEST_CASE("committed counterexample still reproduces") {
  const std::filesystem::path path = std::filesystem::path(UCURVE_FIXTURE_DIR) / "legacy_counterexample_n5.json";
  REQUIRE(std::filesystem::exists(path));
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  const Instance inst = instance_from_json(j);
  CHECK_FALSE(verify_decomposable(inst, ExhaustiveCheck{}).has_value());
  CostEvaluator legacy_ev(inst), oracle_ev(inst);
  const auto legacy = legacy_ucurve_solve(legacy_ev, j.at("legacy_seed").get<std::uint64_t>());
  const auto oracle = exhaustive_solve(oracle_ev);
  CHECK(legacy.best_cost > oracle.best_cost);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CostEvaluator ucs_ev(inst);
    UcsOptions o;
    o.seed = seed;
    CHECK(ucs_solve(ucs_ev, o).minima == oracle.minima);
  }
}
