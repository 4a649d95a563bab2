#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace riemannx {

/// Exact arbitrary-precision rational. Every breakpoint and tag in the
/// library is one of these; scalar values stay in double.
using Rational = mpq_class;

/// Correctly rounded (nearest, ties to even) conversion. `mpq_get_d`
/// truncates, which would make 1/100 and the literal 0.01 disagree.
double to_double(const Rational& q);

/// Exact value of a finite double.
Rational from_double(double x);

/// Lowest terms "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "3", "-2/7", "0.01", "1e-3", "2.5E+2". Decimal strings are read
/// exactly, so "0.1" is 1/10 rather than the nearest double.
Rational parse_rational(std::string_view text);

Rational pow_int(const Rational& base, unsigned exponent);

} // namespace riemannx
