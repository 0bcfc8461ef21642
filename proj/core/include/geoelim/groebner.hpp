#pragma once

#include "geoelim/monomial_order.hpp"
#include "geoelim/multipoly.hpp"

#include <cstddef>
#include <set>
#include <vector>

namespace geoelim::exactmath {

struct GroebnerOptions {
    /// Hard cap on single reduction steps across the whole run; exceeding it
    /// raises ResourceError. Elimination can blow up on malformed inputs, so
    /// fail loudly instead of spinning.
    std::size_t max_reductions = 200000;
};

struct GroebnerStats {
    std::size_t spairs_considered = 0;
    std::size_t spairs_reduced = 0;
    std::size_t reductions = 0;
    std::size_t basis_size = 0;

    GroebnerStats& operator+=(const GroebnerStats& o) {
        spairs_considered += o.spairs_considered;
        spairs_reduced += o.spairs_reduced;
        reductions += o.reductions;
        basis_size = o.basis_size;
        return *this;
    }
};

/// Remainder of f under multivariate division by basis: congruent to f modulo
/// the ideal generated by basis, with no monomial divisible by any of the
/// basis leading monomials under ord.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      const MonomialOrder& ord);

/// S-polynomial of f and g under ord.
MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord);

/// Reduced Groebner basis of the ideal generated by gens under ord. Elements
/// come out auto-reduced, in primitive integer form with positive leading
/// coefficient, sorted ascending by leading monomial.
std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                      const MonomialOrder& ord,
                                      const GroebnerOptions& opts = {},
                                      GroebnerStats* stats = nullptr);

/// Generators of the elimination ideal <gens> intersected with the subring of
/// the kept variables, via a block elimination order.
std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens,
                                 const std::vector<bool>& keep,
                                 const GroebnerOptions& opts = {},
                                 GroebnerStats* stats = nullptr);

std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens,
                                 const std::set<std::size_t>& keep,
                                 const GroebnerOptions& opts = {},
                                 GroebnerStats* stats = nullptr);

} // namespace geoelim::exactmath
