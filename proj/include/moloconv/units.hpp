#pragma once

#include <cmath>
#include <compare>
#include <numbers>

namespace moloconv {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Ordinary frequency in THz: Freq{30.0} stands for 2pi x 30 THz.
// Everything in the physics layer runs on angular values (rad/ps), obtained
// through angular(); dimensionless outputs do not depend on the choice.
struct Freq {
  double thz = 0.0;

  constexpr double angular() const { return kTwoPi * thz; }
  static constexpr Freq from_angular(double w) { return Freq{w / kTwoPi}; }

  bool finite() const { return std::isfinite(thz); }

  constexpr auto operator<=>(const Freq&) const = default;
  constexpr Freq operator-() const { return Freq{-thz}; }
};

namespace literals {
constexpr Freq operator""_thz(long double x) { return Freq{static_cast<double>(x)}; }
constexpr Freq operator""_thz(unsigned long long x) { return Freq{static_cast<double>(x)}; }
}  // namespace literals

}  // namespace moloconv
