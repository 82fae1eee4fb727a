#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace minproj {

/// Exact rational scalar. gmpxx keeps arithmetic results in lowest terms
/// with a positive denominator; values built from strings are canonicalized
/// by parse_rational.
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional leading '-'). Rejects decimal points,
/// exponents, whitespace and zero denominators.
std::optional<Rational> parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Decimal approximation with 12 significant digits. Advisory output only.
std::string to_approx_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

}  // namespace minproj
