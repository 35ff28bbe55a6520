#pragma once

#include <functional>
#include <list>
#include <optional>
#include <random>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ucurve/lattice.hpp"
#include "ucurve/report.hpp"

namespace ucurve {

/// A visited element plus the bookkeeping the depth-first search needs.
///
/// `unverified` holds the features whose neighbour (element with that bit
/// toggled) has not been examined yet. `lower_adjacent` holds the features y
/// in `element` whose lower neighbour element - {y} is not yet known to be
/// covered by the lower restrictions; an empty set is the lower restriction
/// flag. `upper_adjacent` is the dual.
struct Node {
  ElementSet element;
  ElementSet unverified;
  ElementSet lower_adjacent;
  ElementSet upper_adjacent;

  /// A freshly discovered element: every neighbour unverified and open.
  static Node fresh(const ElementSet& x) { return {x, ElementSet::full(x.width()), x, x.complement()}; }
};

/// The collection of live nodes plus the depth-first stack (front = head).
/// The stack stores elements; a stacked element whose node was pruned is
/// dropped by reconcile().
class NodeGraph {
 public:
  Node& insert(const Node& node);
  Node* find(const ElementSet& x);
  const Node* find(const ElementSet& x) const;
  bool contains(const ElementSet& x) const { return nodes_.contains(x); }
  void erase(const ElementSet& x) { nodes_.erase(x); }
  std::size_t size() const { return nodes_.size(); }

  /// Removes every node whose element is a proper subset (superset) of x.
  std::size_t erase_proper_subsets_of(const ElementSet& x);
  std::size_t erase_proper_supersets_of(const ElementSet& x);

  void push(const ElementSet& x) { stack_.push_front(x); }
  void remove_from_stack(const ElementSet& x) { stack_.remove(x); }
  bool stack_empty() const { return stack_.empty(); }
  const ElementSet& head() const { return stack_.front(); }
  const std::list<ElementSet>& stack() const { return stack_; }
  /// stack <- stack intersected with the live nodes.
  void reconcile() {
    stack_.remove_if([this](const ElementSet& x) { return !nodes_.contains(x); });
  }

  std::vector<ElementSet> elements() const;
  const std::unordered_map<ElementSet, Node, ElementSetHash>& nodes() const { return nodes_; }

 private:
  std::unordered_map<ElementSet, Node, ElementSetHash> nodes_;
  std::list<ElementSet> stack_;
};

enum class UcsEventKind {
  iteration,          // main loop asks for a minimal/maximal element
  dfs_begin,
  dfs_end,
  push,
  pop,
  lower_restriction,  // element inserted into R_L
  upper_restriction,  // element inserted into R_U
  candidate,          // element recorded as a minimum candidate
};

std::string_view to_string(UcsEventKind kind);

struct UcsEvent {
  UcsEventKind kind;
  ElementSet element;
};

struct UcsContext;
using UcsObserver = std::function<void(const UcsEvent&, const UcsContext&)>;

/// Mutable state shared by the depth-first search and the main loop.
struct UcsContext {
  explicit UcsContext(CostEvaluator& evaluator);

  int degree;
  CostEvaluator& cost;
  RestrictionSet lower;
  RestrictionSet upper;
  std::unordered_map<ElementSet, Cost, ElementSetHash> candidates;  // the minima candidates
  UcsObserver observer;
  bool check_flags = false;  // verify emptied restriction flags by recomputation

  void restrict(Orientation side, const ElementSet& x);
  void record_candidate(const ElementSet& x);
  void notify(UcsEventKind kind, const ElementSet& x) const {
    if (observer) observer({kind, x}, *this);
  }
};

/// Pops features from y.unverified (lowest index first) until a neighbour of
/// y.element is found that lies in the current space and has no node in g.
/// Neighbours covered by a restriction clear the matching bit of
/// y.lower_adjacent / y.upper_adjacent on the way.
std::optional<Node> select_unvisited_adjacent(Node& y, const NodeGraph& g, const RestrictionSet& lower,
                                              const RestrictionSet& upper);

/// Adds y.element to R_L and drops every node strictly below it.
void lower_pruning(const Node& y, NodeGraph& g, UcsContext& ctx);
void upper_pruning(const Node& y, NodeGraph& g, UcsContext& ctx);

/// Prunes with the cost comparison between two adjacent nodes: when the
/// upper one is strictly cheaper, everything up to the lower one goes; when
/// the lower one is strictly cheaper, everything from the upper one goes.
void node_pruning(Node& x, Node& y, NodeGraph& g, UcsContext& ctx);

/// Depth-first search from `start`, which must lie in the current space.
/// Returns the elements it recorded as minimum candidates, `start` included.
std::vector<ElementSet> dfs(const Node& start, UcsContext& ctx);

enum class Direction { up, down };

Direction select_direction(std::mt19937_64& rng, double p_up);

struct UcsOptions {
  std::uint64_t seed = 0;
  double p_up = 0.5;
  UcsObserver observer;
  bool check_flags =
#ifdef NDEBUG
      false;
#else
      true;
#endif
};

/// Exact minimizer for costs decomposable in U-shaped curves.
SearchReport ucs_solve(CostEvaluator& evaluator, const UcsOptions& options = {});

}  // namespace ucurve
