#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace omlbell {

/// Exact fraction in lowest terms. Every probability value and inequality
/// slack in the library is carried as a Rational.
using Rational = mpq_class;

/// Parses "3", "-2/6", "0.25" or "0,25" into an exact fraction.
/// Throws ParseError on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Renders as "num/den", or "num" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Display-only decimal rendering with `digits` fractional digits (rounded
/// half away from zero). Never parse this back for computation.
std::string format_decimal(const Rational& value, int digits = 6);

inline bool in_unit_interval(const Rational& value) {
    return sgn(value) >= 0 && value <= 1;
}

}  // namespace omlbell
