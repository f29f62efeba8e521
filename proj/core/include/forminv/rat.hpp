#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace forminv {

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
using Rat = mpq_class;
using BigInt = mpz_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input or q == 0.
Rat parse_rat(std::string_view text);

/// Canonical "p" or "p/q" form; inverse of parse_rat.
std::string to_string(const Rat& r);

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Coefficient types that can be scaled by a rational.
inline Rat scaled(const Rat& c, const Rat& s) { return Rat(c * s); }

BigInt factorial(unsigned k);
BigInt binomial(unsigned n, unsigned k);

}  // namespace forminv
