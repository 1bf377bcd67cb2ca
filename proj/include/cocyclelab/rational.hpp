#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cocyclelab {

// All core arithmetic is exact. Rationals are kept canonical (lowest terms,
// positive denominator) by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p", or "p/q" (q > 0 after sign normalization).
// Throws ParseError on anything else, including q == 0.
Rational parse_rational(const std::string& text);

// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& r);

// Fixed-point decimal rendering with `significant` significant digits,
// rounded half away from zero. Trailing zeros are kept: 1/2 -> "0.500000000000".
std::string to_decimal_string(const Rational& r, int significant = 12);

// Representative of r modulo 1 in [0, 1).
Rational mod_one(const Rational& r);

// Shortest-arc distance on the circle R/Z; both arguments reduced mod 1 first.
Rational circle_distance(const Rational& x, const Rational& y);

inline Rational rational_from(std::int64_t n) {
  return Rational(Integer(static_cast<long>(n)));
}

Rational rational_from(std::int64_t num, std::int64_t den);

}  // namespace cocyclelab
