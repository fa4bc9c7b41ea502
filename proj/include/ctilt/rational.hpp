#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ctilt {

/// Exact rational scalar. GMP keeps every result of an arithmetic operation in
/// canonical form (reduced, positive denominator).
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else,
/// including a zero denominator and decimal notation.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" rendering; parse_rational(to_string(x)) == x.
std::string to_string(const Rational& value);

}  // namespace ctilt
