#include "geoelim/monomial_order.hpp"

#include "geoelim/errors.hpp"

#include <algorithm>
#include <numeric>

namespace geoelim::exactmath {

namespace {

// Lexicographic scan along a priority sequence.
int lex_compare(const Exponents& a, const Exponents& b, const std::vector<std::size_t>& order) {
    for (std::size_t v : order) {
        if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
    }
    return 0;
}

// Graded reverse lexicographic restricted to a variable subsequence.
int grevlex_compare(const Exponents& a, const Exponents& b, const std::vector<std::size_t>& order) {
    std::uint32_t da = 0, db = 0;
    for (std::size_t v : order) {
        da += a[v];
        db += b[v];
    }
    if (da != db) return da > db ? 1 : -1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
    }
    return 0;
}

std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

} // namespace

MonomialOrder MonomialOrder::lex(std::vector<std::size_t> perm) {
    MonomialOrder o;
    o.kind = Kind::Lexicographic;
    o.permutation = std::move(perm);
    return o;
}

MonomialOrder MonomialOrder::grevlex(std::vector<std::size_t> perm) {
    MonomialOrder o;
    o.kind = Kind::GradedRevLex;
    o.permutation = std::move(perm);
    return o;
}

MonomialOrder MonomialOrder::block_elimination(std::size_t var_count, std::vector<bool> eliminated) {
    if (eliminated.size() != var_count)
        throw StructuralError("elimination flag vector has wrong length");
    MonomialOrder o;
    o.kind = Kind::BlockElimination;
    o.eliminated = std::move(eliminated);
    return o;
}

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
    if (a.size() != b.size()) throw StructuralError("comparing monomials of different rings");
    std::vector<std::size_t> perm =
        permutation.empty() ? identity_perm(a.size()) : permutation;
    switch (kind) {
    case Kind::Lexicographic:
        return lex_compare(a, b, perm);
    case Kind::GradedRevLex:
        return grevlex_compare(a, b, perm);
    case Kind::BlockElimination: {
        if (eliminated.size() != a.size())
            throw StructuralError("elimination flags do not match the ring");
        std::vector<std::size_t> front, back;
        for (std::size_t v : perm)
            (eliminated[v] ? front : back).push_back(v);
        if (int c = grevlex_compare(a, b, front)) return c;
        return grevlex_compare(a, b, back);
    }
    }
    return 0;
}

std::vector<Term> MonomialOrder::sorted_terms(const MultiPoly& p) const {
    std::vector<Term> ts = p.terms();
    std::sort(ts.begin(), ts.end(),
              [this](const Term& a, const Term& b) { return greater(a.exps, b.exps); });
    return ts;
}

Exponents MonomialOrder::leading_monomial(const MultiPoly& p) const {
    if (p.is_zero()) throw DomainError("leading monomial of the zero polynomial");
    const auto& ts = p.terms();
    std::size_t best = 0;
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (greater(ts[i].exps, ts[best].exps)) best = i;
    return ts[best].exps;
}

Rational MonomialOrder::leading_coefficient(const MultiPoly& p) const {
    if (p.is_zero()) throw DomainError("leading coefficient of the zero polynomial");
    const auto& ts = p.terms();
    std::size_t best = 0;
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (greater(ts[i].exps, ts[best].exps)) best = i;
    return ts[best].coeff;
}

} // namespace geoelim::exactmath
