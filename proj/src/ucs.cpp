#include "ucurve/ucs.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ucurve {

Node& NodeGraph::insert(const Node& node) {
  auto [it, inserted] = nodes_.emplace(node.element, node);
  if (!inserted) throw ContractViolation("node already present in graph");
  return it->second;
}

Node* NodeGraph::find(const ElementSet& x) {
  auto it = nodes_.find(x);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Node* NodeGraph::find(const ElementSet& x) const {
  auto it = nodes_.find(x);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::size_t NodeGraph::erase_proper_subsets_of(const ElementSet& x) {
  return std::erase_if(nodes_, [&](const auto& kv) { return kv.first.is_proper_subset_of(x); });
}

std::size_t NodeGraph::erase_proper_supersets_of(const ElementSet& x) {
  return std::erase_if(nodes_, [&](const auto& kv) { return x.is_proper_subset_of(kv.first); });
}

std::vector<ElementSet> NodeGraph::elements() const {
  std::vector<ElementSet> out;
  out.reserve(nodes_.size());
  for (const auto& [x, node] : nodes_) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view to_string(UcsEventKind kind) {
  switch (kind) {
    case UcsEventKind::iteration: return "iteration";
    case UcsEventKind::dfs_begin: return "dfs_begin";
    case UcsEventKind::dfs_end: return "dfs_end";
    case UcsEventKind::push: return "push";
    case UcsEventKind::pop: return "pop";
    case UcsEventKind::lower_restriction: return "lower_restriction";
    case UcsEventKind::upper_restriction: return "upper_restriction";
    case UcsEventKind::candidate: return "candidate";
  }
  return "unknown";
}

UcsContext::UcsContext(CostEvaluator& evaluator)
    : degree(evaluator.degree()),
      cost(evaluator),
      lower(Orientation::lower, evaluator.degree()),
      upper(Orientation::upper, evaluator.degree()) {}

void UcsContext::restrict(Orientation side, const ElementSet& x) {
  RestrictionSet& r = side == Orientation::lower ? lower : upper;
  if (r.update(x))
    notify(side == Orientation::lower ? UcsEventKind::lower_restriction : UcsEventKind::upper_restriction, x);
}

void UcsContext::record_candidate(const ElementSet& x) {
  if (candidates.contains(x)) return;
  candidates.emplace(x, cost.require(x));
  notify(UcsEventKind::candidate, x);
}

std::optional<Node> select_unvisited_adjacent(Node& y, const NodeGraph& g, const RestrictionSet& lower,
                                              const RestrictionSet& upper) {
  while (!y.unverified.is_empty()) {
    const int index = std::countr_zero(y.unverified.bits());
    y.unverified = y.unverified.without(index);
    const bool going_down = y.element.contains(index);
    const ElementSet x = y.element.toggled(index);

    if (in_current_space(lower, upper, x) && !g.contains(x)) return Node::fresh(x);

    if (going_down && lower.covers(x)) y.lower_adjacent = y.lower_adjacent.without(index);
    if (!going_down && upper.covers(x)) y.upper_adjacent = y.upper_adjacent.without(index);
  }
  return std::nullopt;
}

void lower_pruning(const Node& y, NodeGraph& g, UcsContext& ctx) {
  ctx.restrict(Orientation::lower, y.element);
  g.erase_proper_subsets_of(y.element);
}

void upper_pruning(const Node& y, NodeGraph& g, UcsContext& ctx) {
  ctx.restrict(Orientation::upper, y.element);
  g.erase_proper_supersets_of(y.element);
}

void node_pruning(Node& x, Node& y, NodeGraph& g, UcsContext& ctx) {
  const ElementSet& xe = x.element;
  const ElementSet& ye = y.element;
  const Cost cx = ctx.cost.require(xe);
  const Cost cy = ctx.cost.require(ye);
  const int index = xe.differing_index(ye);
  const ElementSet none = ElementSet::empty(ctx.degree);

  if (xe.is_upper_adjacent_to(ye) && cx < cy) {
    lower_pruning(y, g, ctx);
    x.lower_adjacent = x.lower_adjacent.without(index);
    y.lower_adjacent = none;
  } else if (xe.is_lower_adjacent_to(ye) && cx < cy) {
    upper_pruning(y, g, ctx);
    x.upper_adjacent = x.upper_adjacent.without(index);
    y.upper_adjacent = none;
  } else if (ye.is_upper_adjacent_to(xe) && cx > cy) {
    lower_pruning(x, g, ctx);
    y.lower_adjacent = y.lower_adjacent.without(index);
    x.lower_adjacent = none;
  } else if (ye.is_lower_adjacent_to(xe) && cx > cy) {
    upper_pruning(x, g, ctx);
    y.upper_adjacent = y.upper_adjacent.without(index);
    x.upper_adjacent = none;
  }
}

namespace {

void check_lower_flag(const Node& y, const UcsContext& ctx) {
  for (int i = 0; i < ctx.degree; ++i)
    if (y.element.contains(i) && !ctx.lower.covers(y.element.without(i)))
      throw std::logic_error("lower restriction flag set on " + y.element.to_string() +
                             " but a lower neighbour is uncovered");
}

void check_upper_flag(const Node& y, const UcsContext& ctx) {
  for (int i = 0; i < ctx.degree; ++i)
    if (!y.element.contains(i) && !ctx.upper.covers(y.element.with(i)))
      throw std::logic_error("upper restriction flag set on " + y.element.to_string() +
                             " but an upper neighbour is uncovered");
}

}  // namespace

std::vector<ElementSet> dfs(const Node& start, UcsContext& ctx) {
  std::vector<ElementSet> recorded;
  auto record = [&](const ElementSet& x) {
    if (!ctx.candidates.contains(x)) recorded.push_back(x);
    ctx.record_candidate(x);
  };

  ctx.notify(UcsEventKind::dfs_begin, start.element);
  NodeGraph g;
  g.insert(start);
  g.push(start.element);
  ctx.notify(UcsEventKind::push, start.element);
  record(start.element);

  while (!g.stack_empty()) {
    const ElementSet y_element = g.head();
    Node& y = *g.find(y_element);
    while (true) {
      std::optional<Node> fresh = select_unvisited_adjacent(y, g, ctx.lower, ctx.upper);
      if (!fresh) {
        g.remove_from_stack(y_element);
        ctx.notify(UcsEventKind::pop, y_element);
        break;
      }
      Node& x = g.insert(*fresh);
      g.push(x.element);
      ctx.notify(UcsEventKind::push, x.element);
      record(x.element);
      node_pruning(x, y, g, ctx);
      if (ctx.cost.require(x.element) <= ctx.cost.require(y_element)) break;
    }

    if (y.lower_adjacent.is_empty() && !ctx.lower.covers(y_element)) {
      if (ctx.check_flags) check_lower_flag(y, ctx);
      lower_pruning(y, g, ctx);
    }
    if (y.upper_adjacent.is_empty() && !ctx.upper.covers(y_element)) {
      if (ctx.check_flags) check_upper_flag(y, ctx);
      upper_pruning(y, g, ctx);
    }
    if (y.lower_adjacent.is_empty() && y.upper_adjacent.is_empty()) g.erase(y_element);
    g.reconcile();
  }

  for (const ElementSet& x : g.elements()) {
    const Node& node = *g.find(x);
    if (node.lower_adjacent.is_empty()) ctx.restrict(Orientation::lower, x);
    if (node.upper_adjacent.is_empty()) ctx.restrict(Orientation::upper, x);
  }
  ctx.notify(UcsEventKind::dfs_end, start.element);
  return recorded;
}

Direction select_direction(std::mt19937_64& rng, double p_up) {
  if (!(p_up >= 0.0 && p_up <= 1.0)) throw ContractViolation("p_up must lie in [0, 1]");
  std::bernoulli_distribution up(p_up);
  return up(rng) ? Direction::up : Direction::down;
}

SearchReport ucs_solve(CostEvaluator& evaluator, const UcsOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.algorithm = "ucs";
  const int n = evaluator.degree();
  UcsContext ctx(evaluator);
  ctx.observer = options.observer;
  ctx.check_flags = options.check_flags;
  std::mt19937_64 rng(options.seed);

  try {
    while (true) {
      evaluator.poll();
      const Direction direction = select_direction(rng, options.p_up);
      const bool up = direction == Direction::up;
      const std::optional<ElementSet> a = up ? minimal_element(n, ctx.lower) : maximal_element(n, ctx.upper);
      ++report.minmax_calls;
      if (!a) break;
      ctx.notify(UcsEventKind::iteration, *a);

      const RestrictionSet& opposite = up ? ctx.upper : ctx.lower;
      const bool explore = !opposite.covers(*a);
      // Record A before its own restriction removes it from the space.
      if (explore) ctx.record_candidate(*a);
      ctx.restrict(up ? Orientation::lower : Orientation::upper, *a);
      if (!explore) continue;

      Node node{*a, ElementSet::empty(n), ElementSet::empty(n), ElementSet::empty(n)};
      if (up) {
        node.unverified = node.upper_adjacent = a->complement();
      } else {
        node.unverified = node.lower_adjacent = *a;
      }
      ++report.dfs_calls;
      dfs(node, ctx);
    }
  } catch (const SearchStopped&) {
  }
  report.iterations = report.minmax_calls;

  if (!ctx.candidates.empty()) {
    Cost best = ctx.candidates.begin()->second;
    for (const auto& [x, c] : ctx.candidates) best = std::min(best, c);
    for (const auto& [x, c] : ctx.candidates)
      if (c == best) report.minima.push_back(x);
    std::sort(report.minima.begin(), report.minima.end());
    report.best_cost = best;
  }
  finish_report(report, evaluator, start);
  return report;
}

}  // namespace ucurve
