#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace reliabench {

/// Arbitrary-precision rational. Every probability, power and level in the
/// library is one of these; there is no floating-point path.
using Rational = mpq_class;

/// Accepts "a/b", "-7", and finite decimals such as "0.45". The result is
/// canonical (lowest terms, positive denominator).
Rational parse_rational(std::string_view text);

/// Canonical "a/b" form, or "a" when the denominator is one.
std::string to_string(const Rational& value);

/// Decimal rendering rounded half-away-from-zero to `significant_digits`.
/// Only for display; the exact form is the authoritative one.
std::string to_decimal(const Rational& value, int significant_digits = 15);

Rational power(const Rational& base, unsigned exponent);

inline bool in_unit_interval(const Rational& value) { return value >= 0 && value <= 1; }

}  // namespace reliabench
