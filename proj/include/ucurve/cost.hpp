#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "ucurve/element_set.hpp"

namespace ucurve {

using Cost = double;

/// Labelled observations for the penalized mean conditional entropy criterion.
/// Each row is a feature vector over S and a binary label.
class SampleTable {
 public:
  struct Row {
    ElementSet::Word x;
    int y;
  };

  explicit SampleTable(int degree);

  void add(const ElementSet& x, int y);
  int degree() const { return degree_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  int degree_;
  std::vector<Row> rows_;
};

struct SubsetSumCosts {
  std::vector<std::uint64_t> weights;
  std::uint64_t target = 0;
};

/// One cost per element of P(S), indexed by ElementSet::bits().
struct ExplicitCosts {
  std::vector<Cost> costs;
};

enum class CostKind { subset_sum, mce, explicit_table };

std::string_view to_string(CostKind kind);

/// A U-curve problem instance: a ground-set size and the cost function over
/// its power set.
class Instance {
 public:
  using Payload = std::variant<SubsetSumCosts, SampleTable, ExplicitCosts>;

  static Instance subset_sum(std::vector<std::uint64_t> weights, std::uint64_t target);
  static Instance mce(SampleTable samples);
  static Instance explicit_table(int degree, std::vector<Cost> costs);

  int degree() const { return degree_; }
  CostKind kind() const;
  const Payload& payload() const { return payload_; }

  Cost cost(const ElementSet& x) const;

 private:
  Instance(int degree, Payload payload) : degree_(degree), payload_(std::move(payload)) {}

  int degree_;
  Payload payload_;
};

/// |t - sum of the weights of the features in x|.
Cost subset_sum_cost(const std::vector<std::uint64_t>& weights, std::uint64_t target, const ElementSet& x);

/// Penalized mean conditional entropy of the label given the features in x,
/// in bits. Observed values seen exactly once contribute 1/t each (maximum
/// entropy); the rest contribute H(Y | X = x) P(X = x).
Cost mce_cost(const SampleTable& samples, const ElementSet& x);

/// Weights uniform in [1, weight_max], target uniform in [0, sum of weights].
Instance generate_subset_sum_instance(int degree, std::uint64_t seed, std::uint64_t weight_max = 1000);

/// Random rows whose label is the parity of a planted feature subset,
/// flipped with probability `noise`.
SampleTable generate_sample_table(int degree, std::size_t rows, std::uint64_t seed,
                                  ElementSet planted, double noise = 0.1);

struct DecomposabilityWitness {
  ElementSet lower;   // Z
  ElementSet middle;  // Y, with c(Y) > max(c(Z), c(X))
  ElementSet upper;   // X
};

struct ExhaustiveCheck {};
struct SampledCheck {
  std::size_t chains = 1000;
  std::uint64_t seed = 0;
};
using DecomposabilityMode = std::variant<ExhaustiveCheck, SampledCheck>;

/// Looks for Z <= Y <= X with c(Y) > max(c(Z), c(X)). Returns the first
/// violation found, or nullopt when none exists (exhaustive) or none was hit
/// (sampled).
std::optional<DecomposabilityWitness> verify_decomposable(const Instance& instance, const DecomposabilityMode& mode);

inline constexpr int kMaxExhaustiveDecomposabilityDegree = 10;
inline constexpr int kMaxExplicitDegree = 24;

}  // namespace ucurve
