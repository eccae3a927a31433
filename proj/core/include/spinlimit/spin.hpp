#pragma once

#include <cstdlib>
#include <string>
#include <string_view>

#include "spinlimit/errors.hpp"

namespace spinlimit {

/// Magnetic quantum number m, stored as 2m.
class MagneticIndex {
 public:
  constexpr explicit MagneticIndex(int two_m) : two_m_(two_m) {}

  static constexpr MagneticIndex from_int(int m) { return MagneticIndex(2 * m); }

  constexpr int two_m() const { return two_m_; }
  constexpr double value() const { return 0.5 * two_m_; }
  constexpr MagneticIndex operator-() const { return MagneticIndex(-two_m_); }

  friend constexpr bool operator==(MagneticIndex, MagneticIndex) = default;

 private:
  int two_m_;
};

/// Angular momentum quantum number j, stored as 2j so half-integers are exact.
///
/// Sublevels are indexed in descending order: index 0 is m = j, index 2j is
/// m = -j. Every grid in the library uses this convention.
class SpinNumber {
 public:
  constexpr explicit SpinNumber(int two_j) : two_j_(two_j) {
    if (two_j < 0) throw InvalidInputError("spin: 2j must be non-negative");
  }

  static constexpr SpinNumber from_int(int j) { return SpinNumber(2 * j); }

  /// Parses "10", "7/2", "0.5" or "3.5".
  static SpinNumber parse(std::string_view text);

  constexpr int two_j() const { return two_j_; }
  constexpr double value() const { return 0.5 * two_j_; }
  constexpr int dim() const { return two_j_ + 1; }
  constexpr bool is_integer() const { return two_j_ % 2 == 0; }
  /// j + 1/2, the semiclassical angular momentum.
  constexpr double jbar() const { return 0.5 * two_j_ + 0.5; }

  constexpr bool contains(MagneticIndex m) const {
    return std::abs(m.two_m()) <= two_j_ && (two_j_ - m.two_m()) % 2 == 0;
  }

  constexpr int index_of(MagneticIndex m) const { return (two_j_ - m.two_m()) / 2; }
  constexpr MagneticIndex at(int index) const { return MagneticIndex(two_j_ - 2 * index); }

  void require(MagneticIndex m) const;

  /// "10" or "7/2".
  std::string to_string() const;

  friend constexpr bool operator==(SpinNumber, SpinNumber) = default;
  friend constexpr auto operator<=>(SpinNumber a, SpinNumber b) { return a.two_j_ <=> b.two_j_; }

 private:
  int two_j_;
};

/// (-1)^k for integer k.
constexpr double parity_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace spinlimit
