#include "ucurve/report.hpp"

namespace ucurve {

void finish_report(SearchReport& report, const CostEvaluator& evaluator, std::chrono::steady_clock::time_point start) {
  report.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  report.time_in_cost = std::min(evaluator.time_in_cost(), report.wall_time);
  report.computed_nodes = evaluator.computed_nodes();
  report.budget_exhausted = evaluator.budget_exhausted();
  report.target_reached = evaluator.target_reached();
  if (report.stopped_early() || report.minima.empty()) {
    report.minima = evaluator.best_elements();
    if (const auto best = evaluator.best_cost()) report.best_cost = *best;
  }
}

}  // namespace ucurve
