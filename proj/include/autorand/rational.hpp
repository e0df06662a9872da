#pragma once

#include <gmpxx.h>

#include <string>

namespace autorand {

// Exact rationals; mpq_class keeps values in lowest terms.
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string to_fraction(const Rational& r);
// Fixed-point decimal with `digits` digits after the point, rounded to nearest.
std::string to_decimal(const Rational& r, int digits = 12);
// 2^-exponent
Rational power_of_half(unsigned exponent);
Rational pow(const Rational& base, unsigned exponent);

}  // namespace autorand
