#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace geoelim::exactmath {

using Int = mpz_class;

/// Exact rational number, always kept canonical: lowest terms, positive
/// denominator. All arithmetic is exact; there is no rounding anywhere.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Int& num, const Int& den);

/// base^exp for non-negative exp.
Rational rational_pow(const Rational& base, unsigned exp);

int sign(const Rational& r);
double to_double(const Rational& r);

Int floor_int(const Rational& r);
Int ceil_int(const Rational& r);

/// "p/q" when q != 1, else "p".
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and plain decimal literals like "-1.25".
std::optional<Rational> parse_rational(const std::string& text);

/// Decomposes n > 0 as s^2 * d with d squarefree. Complete for all numbers
/// whose square factors have a prime divisor below 10^6 or are themselves
/// perfect squares; larger semiprime squares are left inside d.
void squarefree_decompose(const Int& n, Int& s, Int& d);

} // namespace geoelim::exactmath
