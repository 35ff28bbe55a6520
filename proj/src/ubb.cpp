#include "ucurve/ubb.hpp"

#include <algorithm>
#include <vector>

namespace ucurve {

namespace {

struct BestTracker {
  std::vector<ElementSet> minima;
  Cost best = 0.0;

  void offer(const ElementSet& x, Cost c) {
    if (minima.empty() || c < best) {
      minima.assign(1, x);
      best = c;
    } else if (c == best) {
      minima.push_back(x);
    }
  }
};

void descend(const EnumTreeNode& parent, Cost parent_cost, CostEvaluator& evaluator, BestTracker& tracker) {
  const int n = evaluator.degree();
  for (int i = parent.max_added_index + 1; i < n; ++i) {
    const EnumTreeNode child{parent.element.with(i), i};
    const Cost c = evaluator.require(child.element);
    tracker.offer(child.element, c);
    if (c > parent_cost) continue;
    descend(child, c, evaluator, tracker);
  }
}

}  // namespace

SearchReport ubb_solve(CostEvaluator& evaluator) {
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.algorithm = "ubb";
  BestTracker tracker;
  try {
    const EnumTreeNode root{ElementSet::empty(evaluator.degree()), -1};
    const Cost c = evaluator.require(root.element);
    tracker.offer(root.element, c);
    descend(root, c, evaluator, tracker);
  } catch (const SearchStopped&) {
  }
  report.minima = std::move(tracker.minima);
  std::sort(report.minima.begin(), report.minima.end());
  report.best_cost = tracker.best;
  finish_report(report, evaluator, start);
  return report;
}

}  // namespace ucurve
