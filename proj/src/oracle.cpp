#include "ucurve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ucurve/lattice.hpp"
#include "ucurve/seeding.hpp"
#include "ucurve/ucs.hpp"

namespace ucurve {

SearchReport exhaustive_solve(CostEvaluator& evaluator) {
  const int n = evaluator.degree();
  if (n > kMaxExhaustiveDegree) throw ContractViolation("exhaustive search is limited to degree 24");
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.algorithm = "exhaustive";
  try {
    const ElementSet::Word size = ElementSet::Word{1} << n;
    for (ElementSet::Word b = 0; b < size; ++b) {
      const ElementSet x(n, b);
      const Cost c = evaluator.require(x);
      if (report.minima.empty() || c < report.best_cost) {
        report.minima.assign(1, x);
        report.best_cost = c;
      } else if (c == report.best_cost) {
        report.minima.push_back(x);
      }
    }
  } catch (const SearchStopped&) {
  }
  std::sort(report.minima.begin(), report.minima.end());
  finish_report(report, evaluator, start);
  return report;
}

SearchReport legacy_ucurve_solve(CostEvaluator& evaluator, std::uint64_t seed, double p_up) {
  const auto start = std::chrono::steady_clock::now();
  const int n = evaluator.degree();
  SearchReport report;
  report.algorithm = "ucurve-legacy";
  RestrictionSet lower(Orientation::lower, n);
  RestrictionSet upper(Orientation::upper, n);
  std::unordered_map<ElementSet, Cost, ElementSetHash> visited;
  std::mt19937_64 rng(seed);

  auto visit = [&](const ElementSet& x) {
    const Cost c = evaluator.require(x);
    visited.emplace(x, c);
    return c;
  };

  try {
    while (true) {
      const bool up = select_direction(rng, p_up) == Direction::up;
      const auto a = up ? minimal_element(n, lower) : maximal_element(n, upper);
      ++report.minmax_calls;
      if (!a) break;
      if (!in_current_space(lower, upper, *a)) {
        (up ? lower : upper).update(*a);
        continue;
      }

      // Walk the chain upwards (downwards) while some neighbour is cheaper.
      ElementSet m = *a;
      Cost cm = visit(m);
      while (true) {
        std::optional<ElementSet> next;
        Cost next_cost = cm;
        for (int i = 0; i < n; ++i) {
          if (m.contains(i) == up) continue;
          const ElementSet y = m.toggled(i);
          if (!in_current_space(lower, upper, y)) continue;
          const Cost cy = visit(y);
          if (cy < next_cost) {
            next = y;
            next_cost = cy;
          }
        }
        if (!next) break;
        m = *next;
        cm = next_cost;
      }

      // Minimum exhausting.
      ++report.dfs_calls;
      std::vector<ElementSet> stack{m};
      std::unordered_set<ElementSet, ElementSetHash> stacked{m};
      while (!stack.empty()) {
        const ElementSet top = stack.back();
        const Cost ct = visit(top);
        bool pushed = false;
        for (const ElementSet& y : adjacent_elements(top)) {
          if (!in_current_space(lower, upper, y) || stacked.contains(y)) continue;
          if (visit(y) <= ct) {
            stack.push_back(y);
            stacked.insert(y);
            pushed = true;
          }
        }
        if (!pushed) {
          stack.pop_back();
          stacked.erase(top);
          lower.update(top);
          upper.update(top);
        }
      }
    }
  } catch (const SearchStopped&) {
  }
  report.iterations = report.minmax_calls;

  if (!visited.empty()) {
    Cost best = visited.begin()->second;
    for (const auto& [x, c] : visited) best = std::min(best, c);
    for (const auto& [x, c] : visited)
      if (c == best) report.minima.push_back(x);
    std::sort(report.minima.begin(), report.minima.end());
    report.best_cost = best;
  }
  finish_report(report, evaluator, start);
  return report;
}

Instance random_decomposable_instance(int degree, std::uint64_t seed) {
  if (degree < 1 || degree > kMaxExplicitDegree) throw ContractViolation("degree must be in [1, 24]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, 9);
  std::uniform_int_distribution<int> slope(1, 4);
  std::bernoulli_distribution two_terms(0.5);

  struct Term {
    std::vector<int> weights;
    int target;
    int down_slope;
    int up_slope;
  };
  auto make_term = [&] {
    Term t{std::vector<int>(static_cast<std::size_t>(degree)), 0, slope(rng), slope(rng)};
    int total = 0;
    for (int& w : t.weights) total += (w = weight(rng));
    t.target = std::uniform_int_distribution<int>(0, total)(rng);
    return t;
  };
  std::vector<Term> terms{make_term()};
  if (two_terms(rng)) terms.push_back(make_term());

  const std::size_t size = std::size_t{1} << degree;
  std::vector<Cost> costs(size);
  for (std::size_t b = 0; b < size; ++b) {
    Cost c = 0.0;
    for (const Term& t : terms) {
      int s = 0;
      for (int i = 0; i < degree; ++i)
        if ((b >> i) & 1u) s += t.weights[static_cast<std::size_t>(i)];
      const int v = s < t.target ? t.down_slope * (t.target - s) : t.up_slope * (s - t.target);
      c = std::max(c, static_cast<Cost>(v));
    }
    costs[b] = c;
  }
  return Instance::explicit_table(degree, std::move(costs));
}

Instance random_plateau_instance(int degree, std::uint64_t seed) {
  if (degree < 1 || degree > 10) throw ContractViolation("plateau instances need degree in [1, 10]");
  constexpr int kEdits = 8;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> weight(1, 9);
  std::vector<std::uint64_t> weights(static_cast<std::size_t>(degree));
  std::uint64_t total = 0;
  for (auto& w : weights) total += (w = weight(rng));
  const std::uint64_t target = std::uniform_int_distribution<std::uint64_t>(0, total)(rng);
  const Cost step = static_cast<Cost>(std::uniform_int_distribution<int>(1, 3)(rng));
  const Cost cap = static_cast<Cost>(std::uniform_int_distribution<int>(1, 4)(rng));

  const Instance base = Instance::subset_sum(weights, target);
  std::vector<Cost> costs(std::size_t{1} << degree);
  for (std::size_t b = 0; b < costs.size(); ++b)
    costs[b] = std::min(std::floor(base.cost(ElementSet(degree, b)) / step), cap);

  std::uniform_int_distribution<std::size_t> pick(0, costs.size() - 1);
  std::bernoulli_distribution raise(0.5);
  for (int e = 0; e < kEdits; ++e) {
    auto edited = costs;
    Cost& c = edited[pick(rng)];
    c = std::max(0.0, c + (raise(rng) ? 1.0 : -1.0));
    if (!verify_decomposable(Instance::explicit_table(degree, edited), ExhaustiveCheck{})) costs = std::move(edited);
  }
  return Instance::explicit_table(degree, std::move(costs));
}

std::optional<Counterexample> find_counterexample(int degree, std::size_t trials, std::uint64_t seed) {
  if (degree < 4 || degree > 8) throw ContractViolation("counterexample search supports degrees 4..8");
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Instance instance = random_plateau_instance(degree, derive_seed(seed, {trial, 0}));
    if (verify_decomposable(instance, ExhaustiveCheck{})) continue;
    const std::uint64_t legacy_seed = derive_seed(seed, {trial, 1});

    CostEvaluator legacy_eval(instance);
    const SearchReport legacy = legacy_ucurve_solve(legacy_eval, legacy_seed);
    CostEvaluator oracle_eval(instance);
    const SearchReport oracle = exhaustive_solve(oracle_eval);
    if (legacy.best_cost > oracle.best_cost)
      return Counterexample{std::move(instance), legacy_seed, trial, legacy.best_cost, oracle.best_cost};
  }
  return std::nullopt;
}

}  // namespace ucurve
