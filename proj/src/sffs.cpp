#include "ucurve/sffs.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace ucurve {

ElementSet sfs_step(const ElementSet& current, CostEvaluator& evaluator) {
  if (current.is_full()) throw ContractViolation("forward step from the full set");
  std::optional<ElementSet> best;
  Cost best_cost = 0.0;
  for (int i = 0; i < current.width(); ++i) {
    if (current.contains(i)) continue;
    const ElementSet candidate = current.with(i);
    const Cost c = evaluator.require(candidate);
    if (!best || c < best_cost) {
      best = candidate;
      best_cost = c;
    }
  }
  return *best;
}

ElementSet sbs_step(const ElementSet& current, CostEvaluator& evaluator) {
  if (current.is_empty()) throw ContractViolation("backward step from the empty set");
  std::optional<ElementSet> best;
  Cost best_cost = 0.0;
  for (int i = 0; i < current.width(); ++i) {
    if (!current.contains(i)) continue;
    const ElementSet candidate = current.without(i);
    const Cost c = evaluator.require(candidate);
    if (!best || c < best_cost) {
      best = candidate;
      best_cost = c;
    }
  }
  return *best;
}

SearchReport sffs_solve(CostEvaluator& evaluator) {
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.algorithm = "sffs";
  const int n = evaluator.degree();

  struct Slot {
    std::optional<ElementSet> subset;
    Cost cost = 0.0;
  };
  std::vector<Slot> best(static_cast<std::size_t>(n) + 1);
  auto offer = [&](const ElementSet& x) {
    Slot& slot = best[static_cast<std::size_t>(x.size())];
    const Cost c = evaluator.require(x);
    if (!slot.subset || c < slot.cost) {
      slot.subset = x;
      slot.cost = c;
      return true;
    }
    return false;
  };

  try {
    ElementSet current = ElementSet::empty(n);
    offer(current);
    while (!current.is_full()) {
      current = sfs_step(current, evaluator);
      offer(current);
      while (current.size() >= 2) {
        const ElementSet reduced = sbs_step(current, evaluator);
        if (!offer(reduced)) break;
        current = reduced;
      }
      ++report.iterations;
    }
  } catch (const SearchStopped&) {
  }

  std::optional<Cost> global;
  for (const Slot& slot : best)
    if (slot.subset && (!global || slot.cost < *global)) global = slot.cost;
  if (global) {
    for (const Slot& slot : best)
      if (slot.subset && slot.cost == *global) report.minima.push_back(*slot.subset);
    std::sort(report.minima.begin(), report.minima.end());
    report.best_cost = *global;
  }
  finish_report(report, evaluator, start);
  return report;
}

}  // namespace ucurve
