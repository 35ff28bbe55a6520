#pragma once

#include "ucurve/report.hpp"

namespace ucurve {

/// Adds the feature whose inclusion gives the lowest cost (lowest index on
/// ties). `current` must not be the full set.
ElementSet sfs_step(const ElementSet& current, CostEvaluator& evaluator);

/// Removes the feature whose exclusion gives the lowest cost (lowest index on
/// ties). `current` must not be empty.
ElementSet sbs_step(const ElementSet& current, CostEvaluator& evaluator);

/// Sequential forward floating selection run over every cardinality: forward
/// steps until the full set is reached, each followed by backward steps while
/// they strictly beat the best subset recorded for the smaller size.
SearchReport sffs_solve(CostEvaluator& evaluator);

}  // namespace ucurve
