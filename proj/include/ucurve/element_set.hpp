#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ucurve {

/// Largest supported ground-set size; one machine word per element.
inline constexpr int kMaxDegree = 64;

/// Thrown when a caller breaks an operation's precondition (width mismatch,
/// malformed input, empty sample table, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A subset X of the ground set S = {s_1, ..., s_n}, stored as its
/// characteristic vector. Bit i is set iff s_{i+1} belongs to X. The text form
/// puts s_1 in the leftmost character, so "10" is {s_1}.
class ElementSet {
 public:
  using Word = std::uint64_t;

  ElementSet() = default;
  ElementSet(int width, Word bits) : bits_(bits & mask_for(width)), width_(width) {
    check_width(width);
  }

  static ElementSet empty(int width) { return {width, 0}; }
  static ElementSet full(int width) { return {width, mask_for(width)}; }
  static ElementSet singleton(int width, int index) {
    ElementSet e = empty(width);
    e.check_index(index);
    e.bits_ = Word{1} << index;
    return e;
  }

  /// Parses a characteristic vector such as "01101".
  static ElementSet parse(std::string_view text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxDegree))
      throw ContractViolation("characteristic vector must have 1..64 characters");
    Word bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1')
        bits |= Word{1} << i;
      else if (text[i] != '0')
        throw ContractViolation("characteristic vector may only contain '0' and '1'");
    }
    return {static_cast<int>(text.size()), bits};
  }

  std::string to_string() const {
    std::string out(static_cast<std::size_t>(width_), '0');
    for (int i = 0; i < width_; ++i)
      if (contains(i)) out[static_cast<std::size_t>(i)] = '1';
    return out;
  }

  int width() const { return width_; }
  Word bits() const { return bits_; }
  int size() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == mask_for(width_); }

  bool contains(int index) const { return (bits_ >> index) & Word{1}; }

  ElementSet with(int index) const {
    check_index(index);
    return {width_, bits_ | (Word{1} << index), Raw{}};
  }
  ElementSet without(int index) const {
    check_index(index);
    return {width_, bits_ & ~(Word{1} << index), Raw{}};
  }
  ElementSet toggled(int index) const {
    check_index(index);
    return {width_, bits_ ^ (Word{1} << index), Raw{}};
  }
  ElementSet complement() const { return {width_, ~bits_ & mask_for(width_), Raw{}}; }

  bool is_subset_of(const ElementSet& other) const {
    check_same_width(other);
    return (bits_ & ~other.bits_) == 0;
  }
  bool is_proper_subset_of(const ElementSet& other) const {
    return is_subset_of(other) && bits_ != other.bits_;
  }
  bool is_superset_of(const ElementSet& other) const { return other.is_subset_of(*this); }

  /// True iff this element is lower adjacent to `other`, i.e. other = this + {y}.
  bool is_lower_adjacent_to(const ElementSet& other) const {
    check_same_width(other);
    const Word diff = other.bits_ & ~bits_;
    return (bits_ & ~other.bits_) == 0 && std::popcount(diff) == 1;
  }
  bool is_upper_adjacent_to(const ElementSet& other) const {
    return other.is_lower_adjacent_to(*this);
  }

  /// Index of the single feature in which two adjacent elements differ.
  int differing_index(const ElementSet& other) const {
    check_same_width(other);
    const Word diff = bits_ ^ other.bits_;
    if (std::popcount(diff) != 1) throw ContractViolation("elements are not adjacent");
    return std::countr_zero(diff);
  }

  ElementSet operator|(const ElementSet& o) const {
    check_same_width(o);
    return {width_, bits_ | o.bits_, Raw{}};
  }
  ElementSet operator&(const ElementSet& o) const {
    check_same_width(o);
    return {width_, bits_ & o.bits_, Raw{}};
  }
  ElementSet operator-(const ElementSet& o) const {
    check_same_width(o);
    return {width_, bits_ & ~o.bits_, Raw{}};
  }

  bool operator==(const ElementSet&) const = default;

  /// Orders by the characteristic vector text ("001" < "010" < "100").
  std::strong_ordering operator<=>(const ElementSet& o) const {
    if (auto c = width_ <=> o.width_; c != 0) return c;
    return lex_key() <=> o.lex_key();
  }

  void check_same_width(const ElementSet& other) const {
    if (width_ != other.width_) throw ContractViolation("element width mismatch");
  }
  void check_index(int index) const {
    if (index < 0 || index >= width_) throw ContractViolation("feature index out of range");
  }

  static Word mask_for(int width) {
    return width >= 64 ? ~Word{0} : ((Word{1} << width) - 1);
  }

 private:
  struct Raw {};
  ElementSet(int width, Word bits, Raw) : bits_(bits), width_(width) {}

  static void check_width(int width) {
    if (width < 0 || width > kMaxDegree) throw ContractViolation("degree must be in [0, 64]");
  }

  // Reversed bits, so the leftmost character becomes most significant.
  Word lex_key() const {
    Word r = 0;
    for (int i = 0; i < width_; ++i)
      if (contains(i)) r |= Word{1} << (width_ - 1 - i);
    return r;
  }

  Word bits_ = 0;
  int width_ = 0;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& e) const noexcept {
    return std::hash<ElementSet::Word>{}(e.bits() * 0x9E3779B97F4A7C15ull + static_cast<unsigned>(e.width()));
  }
};

}  // namespace ucurve
