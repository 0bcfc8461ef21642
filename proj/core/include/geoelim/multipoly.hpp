#pragma once

#include "geoelim/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace geoelim::exactmath {

/// Exponent vector of a monomial; length equals the ring's variable count.
using Exponents = std::vector<std::uint32_t>;

Exponents exp_add(const Exponents& a, const Exponents& b);
Exponents exp_sub(const Exponents& a, const Exponents& b); // requires b | a
Exponents exp_lcm(const Exponents& a, const Exponents& b);
bool exp_divides(const Exponents& a, const Exponents& b); // a | b
std::uint32_t exp_total_degree(const Exponents& a);

struct Term {
    Exponents exps;
    Rational coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored sorted descending under plain lexicographic comparison of
/// exponent vectors, with no zero coefficients and no duplicate monomials; the
/// zero polynomial has an empty term list. Values are immutable in spirit:
/// every operation returns a fresh polynomial.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::size_t var_count) : nvars_(var_count) {}

    static MultiPoly zero(std::size_t var_count) { return MultiPoly(var_count); }
    static MultiPoly constant(std::size_t var_count, const Rational& c);
    static MultiPoly variable(std::size_t var_count, std::size_t index);
    static MultiPoly monomial(Exponents exps, const Rational& c);
    /// Sums a list of (exponents, coefficient) entries, merging duplicates.
    static MultiPoly from_terms(std::size_t var_count, std::vector<Term> terms);

    std::size_t var_count() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // 0 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    std::uint32_t degree_in(std::size_t var) const;
    std::uint32_t total_degree() const;
    std::vector<std::size_t> used_vars() const;
    /// Index of the single used variable, if the polynomial is univariate
    /// (constants report no variable).
    std::optional<std::size_t> sole_variable() const;

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& rhs) const;
    MultiPoly operator-(const MultiPoly& rhs) const;
    MultiPoly operator*(const MultiPoly& rhs) const;
    MultiPoly operator*(const Rational& c) const;
    MultiPoly& operator+=(const MultiPoly& rhs) { return *this = *this + rhs; }
    MultiPoly& operator-=(const MultiPoly& rhs) { return *this = *this - rhs; }
    MultiPoly& operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }
    bool operator==(const MultiPoly& rhs) const;
    bool operator!=(const MultiPoly& rhs) const { return !(*this == rhs); }

    /// Replaces one variable by a polynomial of the same ring.
    MultiPoly substituted(std::size_t var, const MultiPoly& value) const;
    /// Same ring with extra trailing variables.
    MultiPoly extended(std::size_t new_var_count) const;
    /// Re-maps variables; mapping[v] is the new index of old variable v, or
    /// absent when v is unused (it is an error if a dropped variable occurs).
    MultiPoly remapped(const std::vector<std::optional<std::size_t>>& mapping,
                       std::size_t new_var_count) const;

    double eval(const std::vector<double>& point) const;
    Rational eval_exact(const std::vector<Rational>& point) const;

    MultiPoly derivative(std::size_t var) const;

    /// Scales to integer coefficients with content 1 and positive leading
    /// coefficient (leading under the canonical term order).
    MultiPoly primitive_integer_form() const;
    /// Largest absolute coefficient value, 0 for the zero polynomial.
    Rational max_abs_coeff() const;

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    std::size_t nvars_ = 0;
    std::vector<Term> terms_;

    void sort_and_prune();
};

inline MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

/// True when f and g generate the same line over Q, i.e. f = c*g for a
/// nonzero rational c.
bool equal_up_to_scale(const MultiPoly& f, const MultiPoly& g);

/// Parses a sum of monomials like "64*x^5 - 128*x^4 + x" over the given
/// variable names. Throws DomainError on malformed input.
MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& names);

} // namespace geoelim::exactmath
