#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semialg {

// GMP rationals are kept canonical (reduced, positive denominator) by every
// arithmetic operator; values built from raw num/den go through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;
using Point = std::vector<Rational>;

Rational make_rational(const Integer& num, const Integer& den);

/// Base-10 digits only; leading zeros do not switch GMP into octal.
Integer decimal_integer(std::string_view digits);

/// Accepts "a", "-a", "a/b" and decimal "a.bcd" forms. Returns nullopt on
/// anything else, including a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// Whitespace- or comma-separated list of rationals ("0 1/2", "2, -1").
std::optional<Point> parse_point(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Point& p);

int sign(const Rational& q);
double to_double(const Rational& q);
std::vector<double> to_double(const Point& p);

/// Exact rational from a finite double (dyadic, no rounding).
Rational from_double(double v);

}  // namespace semialg
