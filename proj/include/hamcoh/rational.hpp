#pragma once

#include <gmpxx.h>

#include <string>

namespace hamcoh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num" or "num/den"; the result is canonicalized. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace hamcoh
