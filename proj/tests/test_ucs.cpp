#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_util.hpp"
#include "ucurve/oracle.hpp"
#include "ucurve/ucs.hpp"

using namespace ucurve;
using namespace ucurve::testing;

namespace {

// Costs listed in characteristic-vector order of the keys given.
Instance table2(Cost c00, Cost c10, Cost c01, Cost c11) { return Instance::explicit_table(2, {c00, c10, c01, c11}); }

Instance example_instance() { return table2(2, 1, 3, 2); }

std::vector<ElementSet> space(const UcsContext& ctx) {
  std::vector<ElementSet> out;
  for (const auto& x : all_elements(ctx.degree))
    if (in_current_space(ctx.lower, ctx.upper, x)) out.push_back(x);
  return out;
}

std::vector<ElementSet> global_minima(const Instance& inst) {
  CostEvaluator ev(inst);
  return exhaustive_solve(ev).minima;
}

}  // namespace

TEST_CASE("select_unvisited_adjacent") {
  const RestrictionSet no_lower(Orientation::lower, 2);
  const RestrictionSet no_upper(Orientation::upper, 2);

  SUBCASE("first unvisited neighbour, lowest feature first") {
    NodeGraph g;
    Node& y = g.insert(Node::fresh(E("10")));
    const auto x = select_unvisited_adjacent(y, g, no_lower, no_upper);
    REQUIRE(x.has_value());
    CHECK(x->element == E("00"));
    CHECK(x->unverified == E("11"));
    CHECK(x->lower_adjacent == E("00"));
    CHECK(x->upper_adjacent == E("11"));
    CHECK(y.unverified == E("01"));
  }
  SUBCASE("nothing left to verify") {
    NodeGraph g;
    Node y = Node::fresh(E("10"));
    y.unverified = E("00");
    const Node before = y;
    CHECK_FALSE(select_unvisited_adjacent(y, g, no_lower, no_upper).has_value());
    CHECK(y.lower_adjacent == before.lower_adjacent);
    CHECK(y.upper_adjacent == before.upper_adjacent);
  }
  SUBCASE("visited neighbours keep flags, covered ones clear them") {
    NodeGraph g;
    Node& y = g.insert(Node::fresh(E("10")));
    g.insert(Node::fresh(E("00")));
    const RestrictionSet upper = restrictions(Orientation::upper, 2, {"11"});
    CHECK_FALSE(select_unvisited_adjacent(y, g, no_lower, upper).has_value());
    CHECK(y.upper_adjacent == E("00"));
    CHECK(y.lower_adjacent == E("10"));
    CHECK(y.unverified == E("00"));
  }
}

TEST_CASE("lower_pruning and upper_pruning") {
  const Instance inst = Instance::explicit_table(4, std::vector<Cost>(16, 1.0));
  CostEvaluator ev(inst);

  SUBCASE("no proper subsets present") {
    UcsContext ctx(ev);
    NodeGraph g;
    const Node& y = g.insert(Node::fresh(E("0110")));
    lower_pruning(y, g, ctx);
    CHECK(g.size() == 1);
    CHECK(ctx.lower.sorted_members() == std::vector<ElementSet>{E("0110")});
  }
  SUBCASE("proper subsets are dropped, idempotently") {
    UcsContext ctx(ev);
    NodeGraph g;
    const Node y = g.insert(Node::fresh(E("0110")));
    g.insert(Node::fresh(E("0100")));
    g.insert(Node::fresh(E("1100")));
    lower_pruning(y, g, ctx);
    CHECK(g.elements() == std::vector<ElementSet>{E("0110"), E("1100")});
    lower_pruning(y, g, ctx);
    CHECK(g.elements() == std::vector<ElementSet>{E("0110"), E("1100")});
    CHECK(ctx.lower.sorted_members() == std::vector<ElementSet>{E("0110")});
  }
  SUBCASE("upper dual") {
    UcsContext ctx(ev);
    NodeGraph g;
    const Node y = g.insert(Node::fresh(E("0100")));
    g.insert(Node::fresh(E("0110")));
    g.insert(Node::fresh(E("1000")));
    upper_pruning(y, g, ctx);
    CHECK(g.elements() == std::vector<ElementSet>{E("0100"), E("1000")});
    CHECK(ctx.upper.sorted_members() == std::vector<ElementSet>{E("0100")});
  }
}

TEST_CASE("node_pruning branches") {
  SUBCASE("cheaper upper neighbour prunes below the lower one") {
    const Instance inst = table2(5, 2, 5, 1);
    CostEvaluator ev(inst);
    UcsContext ctx(ev);
    NodeGraph g;
    Node& y = g.insert(Node::fresh(E("10")));
    Node& x = g.insert(Node::fresh(E("11")));
    node_pruning(x, y, g, ctx);
    CHECK(ctx.lower.sorted_members() == std::vector<ElementSet>{E("10")});
    CHECK(ctx.upper.empty());
    CHECK(x.lower_adjacent == E("10"));
    CHECK(y.lower_adjacent.is_empty());
  }
  SUBCASE("equal costs change nothing") {
    const Instance inst = table2(5, 2, 5, 2);
    CostEvaluator ev(inst);
    UcsContext ctx(ev);
    NodeGraph g;
    Node& y = g.insert(Node::fresh(E("10")));
    Node& x = g.insert(Node::fresh(E("11")));
    node_pruning(x, y, g, ctx);
    CHECK(ctx.lower.empty());
    CHECK(ctx.upper.empty());
    CHECK(x.lower_adjacent == E("11"));
    CHECK(y.lower_adjacent == E("10"));
    CHECK(g.size() == 2);
  }
  SUBCASE("cheaper lower neighbour prunes above the upper one") {
    const Instance inst = table2(5, 5, 0, 3);
    CostEvaluator ev(inst);
    UcsContext ctx(ev);
    NodeGraph g;
    Node& y = g.insert(Node::fresh(E("11")));
    Node& x = g.insert(Node::fresh(E("01")));
    node_pruning(x, y, g, ctx);
    CHECK(ctx.upper.sorted_members() == std::vector<ElementSet>{E("11")});
    CHECK(ctx.lower.empty());
    CHECK(x.upper_adjacent == E("00"));
    CHECK(y.upper_adjacent.is_empty());
  }
  SUBCASE("costlier new node: roles swap") {
    // x = 00 lower adjacent to y = 10 and more expensive: prune below x.
    const Instance inst = table2(4, 1, 9, 9);
    CostEvaluator ev(inst);
    UcsContext ctx(ev);
    NodeGraph g;
    Node& y = g.insert(Node::fresh(E("10")));
    Node& x = g.insert(Node::fresh(E("00")));
    node_pruning(x, y, g, ctx);
    CHECK(ctx.lower.sorted_members() == std::vector<ElementSet>{E("00")});
    CHECK(y.lower_adjacent.is_empty());
    CHECK(x.lower_adjacent.is_empty());
  }
  SUBCASE("budget stop propagates") {
    const Instance inst = table2(4, 1, 9, 9);
    CostEvaluator ev(inst, StopCriterion::budget(1));
    UcsContext ctx(ev);
    NodeGraph g;
    Node& y = g.insert(Node::fresh(E("10")));
    Node& x = g.insert(Node::fresh(E("00")));
    CHECK_THROWS_AS(node_pruning(x, y, g, ctx), SearchStopped);
  }
}

TEST_CASE("dfs examples") {
  SUBCASE("constant cost on one feature empties the space") {
    const Instance inst = Instance::explicit_table(1, {0.0, 0.0});
    CostEvaluator ev(inst);
    UcsContext ctx(ev);
    ctx.check_flags = true;
    const auto m = dfs(Node::fresh(E("0")), ctx);
    const std::set<ElementSet> got(m.begin(), m.end());
    CHECK(got.count(E("0")) == 1);
    CHECK(got.count(E("1")) == 1);
    CHECK(ctx.lower.covers(E("1")));
    CHECK(ctx.lower.covers(E("0")));
    CHECK(space(ctx).empty());
  }
  SUBCASE("the cheaper neighbour is collected") {
    const Instance inst = example_instance();
    CostEvaluator ev(inst);
    UcsContext ctx(ev);
    ctx.check_flags = true;
    const auto m = dfs(Node::fresh(E("00")), ctx);
    CHECK(std::find(m.begin(), m.end(), E("10")) != m.end());
  }
}

TEST_CASE("dfs collects the minima of the region it removes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Instance inst = trial % 2 ? random_plateau_instance(n, rng()) : random_decomposable_instance(n, rng());
    CostEvaluator ev(inst);
    std::vector<ElementSet> before;
    std::set<ElementSet> seen_before;
    int violations = 0;
    UcsOptions options;
    options.seed = rng();
    options.check_flags = true;
    options.observer = [&](const UcsEvent& e, const UcsContext& c) {
      if (e.kind == UcsEventKind::dfs_begin) {
        // The main loop restricts the start element just before the search,
        // but the search's own prunings are measured against it.
        before = space(c);
        before.push_back(e.element);
      } else if (e.kind == UcsEventKind::dfs_end) {
        std::vector<ElementSet> removed;
        for (const auto& x : before)
          if (in_current_space(c.lower, c.upper, x) == false) removed.push_back(x);
        if (removed.empty()) return;
        Cost best = inst.cost(removed.front());
        for (const auto& x : removed) best = std::min(best, inst.cost(x));
        for (const auto& x : removed)
          if (inst.cost(x) == best && !c.candidates.contains(x)) ++violations;
      }
    };
    ucs_solve(ev, options);
    CHECK(violations == 0);
  }
}

TEST_CASE("ucs_solve examples") {
  SUBCASE("two features") {
    const Instance inst = example_instance();
    CostEvaluator ev(inst);
    const auto r = ucs_solve(ev);
    CHECK(r.minima == std::vector<ElementSet>{E("10")});
    CHECK(r.best_cost == 1.0);
  }
  SUBCASE("constant cost returns everything") {
    const Instance inst = Instance::explicit_table(3, std::vector<Cost>(8, 4.0));
    for (double p : {0.0, 0.5, 1.0}) {
      CostEvaluator ev(inst);
      UcsOptions o;
      o.p_up = p;
      const auto r = ucs_solve(ev, o);
      CHECK(r.minima == sorted(all_elements(3)));
    }
  }
  SUBCASE("subset sum with two exact hits") {
    const Instance inst = Instance::subset_sum({2, 3, 5}, 5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CostEvaluator ev(inst);
      UcsOptions o;
      o.seed = seed;
      const auto r = ucs_solve(ev, o);
      CHECK(r.minima == std::vector<ElementSet>{E("001"), E("110")});
      CHECK(r.best_cost == 0.0);
    }
  }
}

TEST_CASE("ucs_solve finds every global minimum on decomposable instances") {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 9; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const Instance inst = trial % 3 == 0   ? generate_subset_sum_instance(n, rng(), 30)
                            : trial % 3 == 1 ? random_plateau_instance(n, rng())
                                             : random_decomposable_instance(n, rng());
      CostEvaluator ev(inst);
      UcsOptions o;
      o.seed = rng();
      o.p_up = (trial % 5) / 4.0;
      o.check_flags = true;
      const auto r = ucs_solve(ev, o);
      CHECK(r.minima == global_minima(inst));
      CHECK(r.computed_nodes <= (std::uint64_t{1} << n));
      CHECK(r.dfs_calls <= r.minmax_calls);
      CHECK_FALSE(r.budget_exhausted);
    }
  }
}

TEST_CASE("no global minimum is lost at any restriction update") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Instance inst = trial % 2 ? random_plateau_instance(n, rng()) : random_decomposable_instance(n, rng());
    const auto minima = global_minima(inst);
    int violations = 0;
    UcsOptions o;
    o.seed = rng();
    o.observer = [&](const UcsEvent& e, const UcsContext& c) {
      if (e.kind != UcsEventKind::lower_restriction && e.kind != UcsEventKind::upper_restriction) return;
      const bool kept = std::any_of(minima.begin(), minima.end(), [&](const ElementSet& m) {
        return c.candidates.contains(m) || in_current_space(c.lower, c.upper, m);
      });
      if (!kept) ++violations;
    };
    CostEvaluator ev(inst);
    ucs_solve(ev, o);
    CHECK(violations == 0);
  }
}

TEST_CASE("ucs halts on non-decomposable costs and shrinks the space every iteration") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const SampleTable samples = generate_sample_table(n, 30, rng(), ElementSet(n, rng()), 0.3);
    const Instance inst = Instance::mce(samples);
    std::vector<std::size_t> sizes;
    UcsOptions o;
    o.seed = rng();
    o.observer = [&](const UcsEvent& e, const UcsContext& c) {
      if (e.kind == UcsEventKind::iteration) sizes.push_back(space(c).size());
    };
    CostEvaluator ev(inst);
    const auto r = ucs_solve(ev, o);
    CHECK_FALSE(r.minima.empty());
    CHECK(r.computed_nodes <= (std::uint64_t{1} << n));
    for (std::size_t i = 1; i < sizes.size(); ++i) CHECK(sizes[i] <= sizes[i - 1]);
  }
}

TEST_CASE("ucs respects node budgets and cost targets") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 6);
    const Instance inst = generate_subset_sum_instance(n, rng());
    const std::uint64_t k = rng() % 40;
    CostEvaluator ev(inst, StopCriterion::budget(k));
    const auto r = ucs_solve(ev);
    CHECK(r.computed_nodes <= k);
  }
  const Instance inst = generate_subset_sum_instance(10, 5);
  CostEvaluator full(inst);
  const auto complete = ucs_solve(full);
  CostEvaluator targeted(inst, StopCriterion::target(complete.best_cost));
  const auto early = ucs_solve(targeted);
  CHECK(early.target_reached);
  CHECK(early.best_cost == complete.best_cost);
  CHECK(early.computed_nodes <= complete.computed_nodes);
}

TEST_CASE("select_direction") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) CHECK(select_direction(rng, 1.0) == Direction::up);
  for (int i = 0; i < 100; ++i) CHECK(select_direction(rng, 0.0) == Direction::down);
  std::mt19937_64 a(9), b(9);
  for (int i = 0; i < 100; ++i) CHECK(select_direction(a, 0.5) == select_direction(b, 0.5));
  CHECK_THROWS_AS(select_direction(rng, 1.5), ContractViolation);
}
