#pragma once

#include <array>
#include <cstdint>
#include <cstring>

namespace blocksep::opalg {

inline constexpr int kMaxVars = 40;
inline constexpr int kMaxCoords = 12;
inline constexpr int kMaxAtoms = 24;

/// Exponent vector over every ring variable (coordinates, parameters,
/// radicals, angle-function jets). Ordered lexicographically, variable 0 first.
struct Mono {
  std::array<std::uint8_t, kMaxVars> e{};

  friend bool operator==(const Mono& a, const Mono& b) {
    return std::memcmp(a.e.data(), b.e.data(), kMaxVars) == 0;
  }
  friend bool operator<(const Mono& a, const Mono& b) {
    return std::memcmp(a.e.data(), b.e.data(), kMaxVars) < 0;
  }
};

/// Derivative multi-index alpha in N^D.
struct DIdx {
  std::array<std::uint8_t, kMaxCoords> e{};

  int order() const {
    int s = 0;
    for (auto v : e) s += v;
    return s;
  }
  friend bool operator==(const DIdx& a, const DIdx& b) { return a.e == b.e; }
  friend bool operator<(const DIdx& a, const DIdx& b) { return a.e < b.e; }
};

/// Exponents of the denominator atoms.
struct DenExp {
  std::array<std::uint8_t, kMaxAtoms> e{};

  friend bool operator==(const DenExp& a, const DenExp& b) { return a.e == b.e; }
  bool trivial() const {
    for (auto v : e)
      if (v) return false;
    return true;
  }
};

}  // namespace blocksep::opalg
