#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace abcrl {

// Exact non-negative rational, always stored reduced with den > 0. Shaking
// costs are tiny fractions (numerator bounded by the window size), so no
// overflow handling beyond the invariant checks is needed.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational of(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return Rational{num, den};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational operator+(const Rational& other) const {
    return of(num * other.den + other.num * den, den * other.den);
  }

  bool operator==(const Rational&) const = default;

  std::strong_ordering operator<=>(const Rational& other) const {
    const long long lhs = num * other.den;
    const long long rhs = other.num * den;
    return lhs <=> rhs;
  }
};

}  // namespace abcrl
