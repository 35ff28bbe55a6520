#include "ucurve/evaluator.hpp"

#include <algorithm>

namespace ucurve {

CostEvaluator::CostEvaluator(const Instance& instance, StopCriterion stop)
    : CostEvaluator(instance.degree(), [&instance](const ElementSet& x) { return instance.cost(x); }, stop) {}

CostEvaluator::CostEvaluator(int degree, CostFunction fn, StopCriterion stop)
    : degree_(degree), fn_(std::move(fn)), stop_(stop) {
  if (degree < 1 || degree > kMaxDegree) throw ContractViolation("degree must be in [1, 64]");
}

std::optional<Cost> CostEvaluator::evaluate(const ElementSet& x) {
  if (x.width() != degree_) throw ContractViolation("element width differs from evaluator degree");
  if (auto it = memo_.find(x); it != memo_.end()) return it->second;
  if (target_reached_) return std::nullopt;
  if (stop_.kind == StopCriterion::Kind::node_budget && memo_.size() >= stop_.node_budget) {
    budget_exhausted_ = true;
    return std::nullopt;
  }
  const auto start = std::chrono::steady_clock::now();
  const Cost value = fn_(x);
  time_in_cost_ += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  memo_.emplace(x, value);
  if (stop_.kind == StopCriterion::Kind::cost_target && value <= stop_.cost_target) target_reached_ = true;
  if (hook_) hook_(x, value);
  return value;
}

Cost CostEvaluator::require(const ElementSet& x) {
  if (auto v = evaluate(x)) return *v;
  throw SearchStopped();
}

void CostEvaluator::poll() const {
  if (stop_requested()) throw SearchStopped();
}

std::optional<Cost> CostEvaluator::memoized(const ElementSet& x) const {
  if (auto it = memo_.find(x); it != memo_.end()) return it->second;
  return std::nullopt;
}

std::optional<Cost> CostEvaluator::best_cost() const {
  std::optional<Cost> best;
  for (const auto& [x, c] : memo_)
    if (!best || c < *best) best = c;
  return best;
}

std::vector<ElementSet> CostEvaluator::best_elements() const {
  std::vector<ElementSet> out;
  const auto best = best_cost();
  if (!best) return out;
  for (const auto& [x, c] : memo_)
    if (c == *best) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ucurve
