#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace mstfan {

// Arbitrary-precision rational, always kept canonical (lowest terms,
// positive denominator) by gmpxx.
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

// Parses "p", "-p" or "p/q". Throws ValidationError on malformed text or a
// zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace mstfan
