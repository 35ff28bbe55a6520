#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ucurve/cost.hpp"

namespace ucurve {

/// When a search must stop early: after k distinct cost computations, or as
/// soon as some computed cost is at or below a target.
struct StopCriterion {
  enum class Kind { none, node_budget, cost_target };

  Kind kind = Kind::none;
  std::uint64_t node_budget = 0;
  Cost cost_target = 0.0;

  static StopCriterion none() { return {}; }
  static StopCriterion budget(std::uint64_t k) { return {Kind::node_budget, k, 0.0}; }
  static StopCriterion target(Cost tau) { return {Kind::cost_target, 0, tau}; }
};

/// Control signal raised by CostEvaluator::require when the stop criterion
/// fires. Solvers catch it at their top level and report best-so-far.
class SearchStopped : public std::exception {
 public:
  const char* what() const noexcept override { return "search stopped by evaluator"; }
};

/// Memoizing, instrumented wrapper around an instance's cost function.
///
/// Every distinct element is computed at most once, so computed_nodes() is
/// always the number of memoized entries. With a node budget k, a cache miss
/// that would become the (k+1)-th computation is refused instead.
class CostEvaluator {
 public:
  using CostFunction = std::function<Cost(const ElementSet&)>;
  using ComputeHook = std::function<void(const ElementSet&, Cost)>;

  /// Keeps a reference to `instance`; it must outlive the evaluator.
  explicit CostEvaluator(const Instance& instance, StopCriterion stop = {});
  CostEvaluator(Instance&&, StopCriterion = {}) = delete;
  CostEvaluator(int degree, CostFunction fn, StopCriterion stop = {});

  int degree() const { return degree_; }

  /// The cost of x, or nullopt when the stop criterion forbids computing it.
  std::optional<Cost> evaluate(const ElementSet& x);

  /// Like evaluate, but throws SearchStopped instead of returning nullopt.
  Cost require(const ElementSet& x);

  /// Throws SearchStopped if a stop has already been requested.
  void poll() const;

  bool stop_requested() const { return budget_exhausted_ || target_reached_; }
  bool budget_exhausted() const { return budget_exhausted_; }
  bool target_reached() const { return target_reached_; }

  std::uint64_t computed_nodes() const { return static_cast<std::uint64_t>(memo_.size()); }
  std::chrono::nanoseconds time_in_cost() const { return time_in_cost_; }
  const StopCriterion& stop_criterion() const { return stop_; }

  bool is_memoized(const ElementSet& x) const { return memo_.contains(x); }
  std::optional<Cost> memoized(const ElementSet& x) const;

  /// Minimum over every computed element; empty when nothing was computed.
  std::optional<Cost> best_cost() const;
  /// All computed elements achieving best_cost(), sorted.
  std::vector<ElementSet> best_elements() const;

  /// Called after every fresh computation (not on cache hits).
  void set_compute_hook(ComputeHook hook) { hook_ = std::move(hook); }

 private:
  int degree_;
  CostFunction fn_;
  StopCriterion stop_;
  std::unordered_map<ElementSet, Cost, ElementSetHash> memo_;
  std::chrono::nanoseconds time_in_cost_{0};
  bool budget_exhausted_ = false;
  bool target_reached_ = false;
  ComputeHook hook_;
};

}  // namespace ucurve
