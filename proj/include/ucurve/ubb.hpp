#pragma once

#include "ucurve/report.hpp"

namespace ucurve {

/// A position in the power-set spanning tree rooted at the empty set.
/// Children only add features with index greater than `max_added_index`, so
/// every subset has exactly one tree path.
struct EnumTreeNode {
  ElementSet element;
  int max_added_index = -1;
};

/// Branch and bound over the power-set spanning tree. A child that costs
/// strictly more than its parent is cut together with its whole subtree:
/// on a U-shaped chain every superset of it costs at least as much.
SearchReport ubb_solve(CostEvaluator& evaluator);

}  // namespace ucurve
