#pragma once

#include <list>
#include <optional>
#include <vector>

#include "ucurve/element_set.hpp"

namespace ucurve {

enum class Orientation { lower, upper };

/// An antichain of restriction elements. A lower collection removes every
/// interval [0, R] from the search space, an upper one every [R, S].
///
/// Members live in a doubly linked list: lookups are linear in the number of
/// members, insertions and removals are constant time.
class RestrictionSet {
 public:
  RestrictionSet(Orientation orientation, int degree);

  Orientation orientation() const { return orientation_; }
  int degree() const { return degree_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::list<ElementSet>& members() const { return members_; }

  /// Lower: some member contains x. Upper: some member is contained in x.
  bool covers(const ElementSet& x) const;

  /// Inserts x unless it is already covered, dropping every member that x
  /// now dominates. Returns true when the collection changed.
  bool update(const ElementSet& x);

  /// Members sorted by characteristic vector, for stable output.
  std::vector<ElementSet> sorted_members() const;

 private:
  void check(const ElementSet& x) const;

  Orientation orientation_;
  int degree_;
  std::list<ElementSet> members_;
};

inline bool covers(const RestrictionSet& r, const ElementSet& x) { return r.covers(x); }

/// Functional form of RestrictionSet::update.
RestrictionSet update_restriction(RestrictionSet r, const ElementSet& x);

/// A minimal element of P(S) minus the lower intervals, or nullopt when
/// S itself is covered.
std::optional<ElementSet> minimal_element(int degree, const RestrictionSet& lower);

/// A maximal element of P(S) minus the upper intervals, or nullopt when the
/// empty set is covered.
std::optional<ElementSet> maximal_element(int degree, const RestrictionSet& upper);

bool in_current_space(const RestrictionSet& lower, const RestrictionSet& upper, const ElementSet& x);

/// The n elements at Hamming distance one from x, by ascending feature index.
std::vector<ElementSet> adjacent_elements(const ElementSet& x);

}  // namespace ucurve
