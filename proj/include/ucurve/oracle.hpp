#pragma once

#include <optional>

#include "ucurve/report.hpp"

namespace ucurve {

inline constexpr int kMaxExhaustiveDegree = 24;

/// Evaluates all 2^n subsets.
SearchReport exhaustive_solve(CostEvaluator& evaluator);

/// The original U-Curve dynamics, including its faulty minimum-exhausting
/// step: a stacked element with nothing left to push is popped and added to
/// both restriction collections, which can discard unvisited cheaper elements.
/// Kept only to demonstrate that failure; it may return a non-optimal cost.
SearchReport legacy_ucurve_solve(CostEvaluator& evaluator, std::uint64_t seed, double p_up = 0.5);

/// Costs max(g1(w1 . X), g2(w2 . X)) with positive integer weights and
/// piecewise-linear V-shaped g1, g2. Sums grow strictly along chains and each
/// g is quasiconvex, so the result is decomposable in U-shaped curves.
Instance random_decomposable_instance(int degree, std::uint64_t seed);

/// Subset-sum costs |t - sum| passed through a nondecreasing step map
/// (quantize, then clamp at a small cap), followed by a few +-1 edits that are
/// kept only while the table stays decomposable. The step map preserves the
/// U shape and leaves wide plateaus of equal cost. Limited to degree <= 10.
Instance random_plateau_instance(int degree, std::uint64_t seed);

struct Counterexample {
  Instance instance;
  std::uint64_t legacy_seed = 0;
  std::size_t trial = 0;
  Cost legacy_cost = 0.0;
  Cost optimum = 0.0;
};

/// Searches random plateau instances for one on which the legacy
/// algorithm misses the optimum. Deterministic per seed; the lowest trial
/// index wins.
std::optional<Counterexample> find_counterexample(int degree, std::size_t trials, std::uint64_t seed);

}  // namespace ucurve
