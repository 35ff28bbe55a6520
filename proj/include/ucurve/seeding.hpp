#pragma once

#include <cstdint>
#include <initializer_list>

namespace ucurve {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Independent stream seed for a (base, coordinates...) tuple.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coordinates) {
  std::uint64_t s = mix_seed(base);
  for (std::uint64_t c : coordinates) s = mix_seed(s ^ mix_seed(c));
  return s;
}

}  // namespace ucurve
