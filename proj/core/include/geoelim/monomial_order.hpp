#pragma once

#include "geoelim/multipoly.hpp"

#include <vector>

namespace geoelim::exactmath {

/// A monomial order: a multiplication-compatible total order on monomials
/// with 1 minimal. Three kinds are provided:
///   - lexicographic over a variable priority list,
///   - graded reverse lexicographic,
///   - block elimination: variables flagged for elimination are compared
///     first (graded reverse lexicographically), so any monomial containing
///     an eliminated variable exceeds every monomial free of them.
struct MonomialOrder {
    enum class Kind { Lexicographic, GradedRevLex, BlockElimination };

    Kind kind = Kind::GradedRevLex;
    /// Variable priority, most significant first; empty means 0,1,2,...
    std::vector<std::size_t> permutation;
    /// BlockElimination only: flags[v] marks v as eliminated.
    std::vector<bool> eliminated;

    static MonomialOrder lex(std::vector<std::size_t> perm = {});
    static MonomialOrder grevlex(std::vector<std::size_t> perm = {});
    static MonomialOrder block_elimination(std::size_t var_count, std::vector<bool> eliminated);

    /// -1, 0 or 1 as a <, =, > b.
    int compare(const Exponents& a, const Exponents& b) const;
    bool greater(const Exponents& a, const Exponents& b) const { return compare(a, b) > 0; }
    bool less(const Exponents& a, const Exponents& b) const { return compare(a, b) < 0; }

    /// The polynomial's terms sorted descending under this order.
    std::vector<Term> sorted_terms(const MultiPoly& p) const;
    /// Leading monomial under this order; throws DomainError on zero.
    Exponents leading_monomial(const MultiPoly& p) const;
    Rational leading_coefficient(const MultiPoly& p) const;
};

} // namespace geoelim::exactmath
