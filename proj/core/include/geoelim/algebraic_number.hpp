#pragma once

#include "geoelim/multipoly.hpp"
#include "geoelim/rational.hpp"

#include <string>
#include <utility>

namespace geoelim::exactmath {

/// Exact representation of an answer: either a rational p/q or a quadratic
/// surd (p + q*sqrt(d))/r with r > 0, q != 0, d squarefree > 1 and
/// gcd(p, q, r) = 1. Carries its minimal polynomial (univariate, primitive
/// integer coefficients, positive leading coefficient).
class AlgebraicNumber {
public:
    enum class Kind { Rational, QuadraticSurd };

    static AlgebraicNumber rational(const Rational& value);
    /// Builds (p + q*sqrt(d))/r, normalizing signs, gcd and square factors
    /// of d. Falls back to the rational kind when q = 0 or d becomes 1.
    static AlgebraicNumber surd(Int p, Int q, Int r, Int d);

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::Rational; }
    const Rational& rational_value() const; // Rational kind only
    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }
    const Int& d() const { return d_; }

    const MultiPoly& minimal_polynomial() const { return minpoly_; }
    double to_double() const;

    /// The exact square, when it is rational: v^2 for rationals and
    /// q^2 d / r^2 for pure surds (p = 0). Throws QueryError otherwise.
    Rational square_as_rational() const;

    /// Evaluates a univariate polynomial at this number exactly inside
    /// Q(sqrt(d)); the result is a + b*sqrt(d) returned as (a, b). For the
    /// rational kind b is always zero.
    std::pair<Rational, Rational> evaluate(const MultiPoly& poly) const;

    /// "253/34", "8*sqrt(2)", "4/7*sqrt(21)", "(3 + sqrt(5))/8".
    std::string to_text() const;

    bool operator==(const AlgebraicNumber& o) const;
    bool operator!=(const AlgebraicNumber& o) const { return !(*this == o); }

private:
    Kind kind_ = Kind::Rational;
    Rational value_;     // Rational kind
    Int p_, q_, r_, d_;  // QuadraticSurd kind
    MultiPoly minpoly_;
};

} // namespace geoelim::exactmath
