#include "ucurve/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace ucurve {

SampleTable::SampleTable(int degree) : degree_(degree) {
  if (degree < 1 || degree > kMaxDegree) throw ContractViolation("degree must be in [1, 64]");
}

void SampleTable::add(const ElementSet& x, int y) {
  if (x.width() != degree_) throw ContractViolation("sample width differs from table degree");
  if (y != 0 && y != 1) throw ContractViolation("sample label must be 0 or 1");
  rows_.push_back({x.bits(), y});
}

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::subset_sum: return "subset_sum";
    case CostKind::mce: return "mce";
    case CostKind::explicit_table: return "explicit";
  }
  return "unknown";
}

Instance Instance::subset_sum(std::vector<std::uint64_t> weights, std::uint64_t target) {
  const auto n = static_cast<int>(weights.size());
  if (n < 1 || n > kMaxDegree) throw ContractViolation("subset-sum instance needs 1..64 weights");
  return {n, SubsetSumCosts{std::move(weights), target}};
}

Instance Instance::mce(SampleTable samples) {
  if (samples.size() == 0) throw ContractViolation("sample table is empty");
  const int n = samples.degree();
  return {n, std::move(samples)};
}

Instance Instance::explicit_table(int degree, std::vector<Cost> costs) {
  if (degree < 1 || degree > kMaxExplicitDegree)
    throw ContractViolation("explicit instances support degrees 1..24");
  if (costs.size() != (std::size_t{1} << degree))
    throw ContractViolation("explicit instance must list a cost for every subset");
  for (Cost c : costs)
    if (!(c >= 0.0) || !std::isfinite(c)) throw ContractViolation("explicit costs must be finite and non-negative");
  return {degree, ExplicitCosts{std::move(costs)}};
}

CostKind Instance::kind() const {
  switch (payload_.index()) {
    case 0: return CostKind::subset_sum;
    case 1: return CostKind::mce;
    default: return CostKind::explicit_table;
  }
}

Cost Instance::cost(const ElementSet& x) const {
  if (x.width() != degree_) throw ContractViolation("element width differs from instance degree");
  struct Visitor {
    const ElementSet& x;
    Cost operator()(const SubsetSumCosts& s) const { return subset_sum_cost(s.weights, s.target, x); }
    Cost operator()(const SampleTable& t) const { return mce_cost(t, x); }
    Cost operator()(const ExplicitCosts& e) const { return e.costs[static_cast<std::size_t>(x.bits())]; }
  };
  return std::visit(Visitor{x}, payload_);
}

Cost subset_sum_cost(const std::vector<std::uint64_t>& weights, std::uint64_t target, const ElementSet& x) {
  if (static_cast<int>(weights.size()) != x.width()) throw ContractViolation("element width differs from weight count");
  std::uint64_t sum = 0;
  for (int i = 0; i < x.width(); ++i)
    if (x.contains(i)) sum += weights[static_cast<std::size_t>(i)];
  const std::uint64_t diff = sum > target ? sum - target : target - sum;
  return static_cast<Cost>(diff);
}

namespace {

double binary_entropy(std::size_t ones, std::size_t total) {
  if (ones == 0 || ones == total) return 0.0;
  const double p = static_cast<double>(ones) / static_cast<double>(total);
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace

Cost mce_cost(const SampleTable& samples, const ElementSet& x) {
  if (samples.size() == 0) throw ContractViolation("sample table is empty");
  if (x.width() != samples.degree()) throw ContractViolation("element width differs from sample degree");

  std::vector<std::pair<ElementSet::Word, int>> projected;
  projected.reserve(samples.size());
  for (const auto& row : samples.rows()) projected.emplace_back(row.x & x.bits(), row.y);
  std::sort(projected.begin(), projected.end());

  const auto t = static_cast<double>(projected.size());
  std::size_t singletons = 0;
  double weighted_entropy = 0.0;
  for (std::size_t i = 0; i < projected.size();) {
    std::size_t j = i;
    std::size_t ones = 0;
    while (j < projected.size() && projected[j].first == projected[i].first) ones += static_cast<std::size_t>(projected[j++].second);
    const std::size_t count = j - i;
    if (count == 1)
      ++singletons;
    else
      weighted_entropy += binary_entropy(ones, count) * static_cast<double>(count) / t;
    i = j;
  }
  return static_cast<double>(singletons) / t + weighted_entropy;
}

Instance generate_subset_sum_instance(int degree, std::uint64_t seed, std::uint64_t weight_max) {
  if (degree < 1 || degree > kMaxDegree) throw ContractViolation("degree must be in [1, 64]");
  if (weight_max < 1) throw ContractViolation("weight_max must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> weight(1, weight_max);
  std::vector<std::uint64_t> weights(static_cast<std::size_t>(degree));
  for (auto& w : weights) w = weight(rng);
  const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
  std::uniform_int_distribution<std::uint64_t> target(0, total);
  const std::uint64_t t = target(rng);
  return Instance::subset_sum(std::move(weights), t);
}

SampleTable generate_sample_table(int degree, std::size_t rows, std::uint64_t seed, ElementSet planted, double noise) {
  if (planted.width() != degree) throw ContractViolation("planted subset width differs from degree");
  if (rows == 0) throw ContractViolation("sample table needs at least one row");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(noise);
  SampleTable table(degree);
  for (std::size_t r = 0; r < rows; ++r) {
    const ElementSet x(degree, rng());
    int y = (x & planted).size() % 2;
    if (flip(rng)) y ^= 1;
    table.add(x, y);
  }
  return table;
}

namespace {

std::optional<DecomposabilityWitness> check_exhaustive(const Instance& instance) {
  const int n = instance.degree();
  if (n > kMaxExhaustiveDecomposabilityDegree)
    throw ContractViolation("exhaustive decomposability check is limited to degree 10");
  const std::size_t size = std::size_t{1} << n;
  std::vector<Cost> c(size);
  for (std::size_t b = 0; b < size; ++b) c[b] = instance.cost(ElementSet(n, b));
  const ElementSet::Word full = ElementSet::mask_for(n);

  for (ElementSet::Word y = 0; y < size; ++y) {
    const Cost cy = c[y];
    // Ascending submasks of y.
    std::optional<ElementSet::Word> below;
    ElementSet::Word z = 0;
    do {
      if (c[z] < cy) {
        below = z;
        break;
      }
      z = (z - y) & y;
    } while (z != 0);
    if (!below) continue;
    const ElementSet::Word free = full & ~y;
    ElementSet::Word add = 0;
    do {
      if (c[y | add] < cy)
        return DecomposabilityWitness{ElementSet(n, *below), ElementSet(n, y), ElementSet(n, y | add)};
      add = (add - free) & free;
    } while (add != 0);
  }
  return std::nullopt;
}

std::optional<DecomposabilityWitness> check_sampled(const Instance& instance, const SampledCheck& mode) {
  const int n = instance.degree();
  std::mt19937_64 rng(mode.seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::vector<ElementSet> chain(static_cast<std::size_t>(n) + 1);
  std::vector<Cost> c(chain.size());
  for (std::size_t k = 0; k < mode.chains; ++k) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    chain[0] = ElementSet::empty(n);
    for (int i = 0; i < n; ++i) chain[static_cast<std::size_t>(i) + 1] = chain[static_cast<std::size_t>(i)].with(order[static_cast<std::size_t>(i)]);
    for (std::size_t i = 0; i < chain.size(); ++i) c[i] = instance.cost(chain[i]);

    std::vector<std::size_t> suffix_min(chain.size());
    suffix_min.back() = chain.size() - 1;
    for (std::size_t i = chain.size() - 1; i-- > 0;)
      suffix_min[i] = c[i] < c[suffix_min[i + 1]] ? i : suffix_min[i + 1];
    std::size_t prefix_min = 0;
    for (std::size_t j = 1; j + 1 < chain.size(); ++j) {
      const std::size_t after = suffix_min[j + 1];
      if (c[prefix_min] < c[j] && c[after] < c[j])
        return DecomposabilityWitness{chain[prefix_min], chain[j], chain[after]};
      if (c[j] < c[prefix_min]) prefix_min = j;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<DecomposabilityWitness> verify_decomposable(const Instance& instance, const DecomposabilityMode& mode) {
  if (const auto* sampled = std::get_if<SampledCheck>(&mode)) return check_sampled(instance, *sampled);
  return check_exhaustive(instance);
}

}  // namespace ucurve
