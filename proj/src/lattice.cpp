#include "ucurve/lattice.hpp"

#include <algorithm>

namespace ucurve {

RestrictionSet::RestrictionSet(Orientation orientation, int degree)
    : orientation_(orientation), degree_(degree) {
  if (degree < 1 || degree > kMaxDegree) throw ContractViolation("degree must be in [1, 64]");
}

void RestrictionSet::check(const ElementSet& x) const {
  if (x.width() != degree_) throw ContractViolation("element width differs from restriction degree");
}

bool RestrictionSet::covers(const ElementSet& x) const {
  check(x);
  const auto xb = x.bits();
  if (orientation_ == Orientation::lower) {
    for (const auto& r : members_)
      if ((xb & ~r.bits()) == 0) return true;
  } else {
    for (const auto& r : members_)
      if ((r.bits() & ~xb) == 0) return true;
  }
  return false;
}

bool RestrictionSet::update(const ElementSet& x) {
  if (covers(x)) return false;
  // x is not covered, so no member equals x: "dominated" below means proper.
  if (orientation_ == Orientation::lower)
    members_.remove_if([&](const ElementSet& r) { return r.is_subset_of(x); });
  else
    members_.remove_if([&](const ElementSet& r) { return x.is_subset_of(r); });
  members_.push_back(x);
  return true;
}

std::vector<ElementSet> RestrictionSet::sorted_members() const {
  std::vector<ElementSet> out(members_.begin(), members_.end());
  std::sort(out.begin(), out.end());
  return out;
}

RestrictionSet update_restriction(RestrictionSet r, const ElementSet& x) {
  r.update(x);
  return r;
}

// The uncovered part of the lattice is closed upwards, so an element is
// minimal in it iff every lower neighbour is covered. Clearing bits in one
// ascending pass suffices: once x - {i} is covered, it stays covered for every
// smaller x.
std::optional<ElementSet> minimal_element(int degree, const RestrictionSet& lower) {
  if (lower.orientation() != Orientation::lower) throw ContractViolation("expected lower restrictions");
  ElementSet x = ElementSet::full(degree);
  if (lower.covers(x)) return std::nullopt;
  for (int i = 0; i < degree; ++i) {
    const ElementSet y = x.without(i);
    if (y != x && !lower.covers(y)) x = y;
  }
  return x;
}

std::optional<ElementSet> maximal_element(int degree, const RestrictionSet& upper) {
  if (upper.orientation() != Orientation::upper) throw ContractViolation("expected upper restrictions");
  ElementSet x = ElementSet::empty(degree);
  if (upper.covers(x)) return std::nullopt;
  for (int i = 0; i < degree; ++i) {
    const ElementSet y = x.with(i);
    if (y != x && !upper.covers(y)) x = y;
  }
  return x;
}

bool in_current_space(const RestrictionSet& lower, const RestrictionSet& upper, const ElementSet& x) {
  return !lower.covers(x) && !upper.covers(x);
}

std::vector<ElementSet> adjacent_elements(const ElementSet& x) {
  std::vector<ElementSet> out;
  out.reserve(static_cast<std::size_t>(x.width()));
  for (int i = 0; i < x.width(); ++i) out.push_back(x.toggled(i));
  return out;
}

}  // namespace ucurve
