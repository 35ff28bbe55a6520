#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "ucurve/evaluator.hpp"

namespace ucurve {

struct SearchReport {
  std::string algorithm;
  std::vector<ElementSet> minima;  // sorted
  Cost best_cost = 0.0;
  std::uint64_t computed_nodes = 0;
  std::chrono::nanoseconds wall_time{0};
  std::chrono::nanoseconds time_in_cost{0};
  std::uint64_t dfs_calls = 0;
  std::uint64_t minmax_calls = 0;
  std::uint64_t iterations = 0;  // main-loop iterations, where meaningful
  bool budget_exhausted = false;
  bool target_reached = false;

  std::chrono::nanoseconds time_other() const { return wall_time - time_in_cost; }
  bool stopped_early() const { return budget_exhausted || target_reached; }
};

/// Fills the instrumentation fields of `report` from the evaluator. When the
/// run stopped early, the minima become the best elements computed so far.
void finish_report(SearchReport& report, const CostEvaluator& evaluator, std::chrono::steady_clock::time_point start);

}  // namespace ucurve
