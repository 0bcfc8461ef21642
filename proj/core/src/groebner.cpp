#include "geoelim/groebner.hpp"

#include "geoelim/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace geoelim::exactmath {

namespace {

struct MonoGreater {
    const MonomialOrder* ord;
    bool operator()(const Exponents& a, const Exponents& b) const {
        return ord->compare(a, b) > 0;
    }
};

// Working polynomial: term map sorted descending under the active order.
using TermMap = std::map<Exponents, Rational, MonoGreater>;

struct Elem {
    std::vector<Term> terms; // descending under the active order
    unsigned sugar = 0;

    const Exponents& lm() const { return terms.front().exps; }
    const Rational& lc() const { return terms.front().coeff; }
};

struct Budget {
    std::size_t limit;
    GroebnerStats* stats;

    void step() {
        ++stats->reductions;
        if (stats->reductions > limit)
            throw ResourceError("S-pair reduction budget exceeded (" +
                                    std::to_string(limit) + " reductions; basis size " +
                                    std::to_string(stats->basis_size) + ")",
                                stats->spairs_considered, stats->reductions);
    }
};

TermMap to_term_map(const std::vector<Term>& terms, const MonomialOrder& ord) {
    TermMap m(MonoGreater{&ord});
    for (const auto& t : terms) m.emplace(t.exps, t.coeff);
    return m;
}

Elem make_elem(const MultiPoly& p, const MonomialOrder& ord, unsigned sugar) {
    return Elem{ord.sorted_terms(p), sugar};
}

MultiPoly elem_to_poly(std::size_t nvars, const std::vector<Term>& terms) {
    return MultiPoly::from_terms(nvars, terms);
}

// f -= c * x^shift * g, cancelling f's current leading term exactly.
void apply_reduction(TermMap& f, const Elem& g, const Exponents& shift, const Rational& c) {
    for (const auto& t : g.terms) {
        Exponents key = exp_add(t.exps, shift);
        auto it = f.find(key);
        if (it == f.end()) {
            f.emplace(std::move(key), -(c * t.coeff));
        } else {
            it->second -= c * t.coeff;
            if (sign(it->second) == 0) f.erase(it);
        }
    }
}

// Full reduction: every monomial of the result is reduced.
std::vector<Term> reduce_full(TermMap f, const std::vector<Elem>& basis,
                              const std::vector<bool>& alive, Budget& budget) {
    std::vector<Term> remainder;
    while (!f.empty()) {
        auto lead = f.begin();
        const Elem* reducer = nullptr;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!alive[i]) continue;
            if (exp_divides(basis[i].lm(), lead->first)) {
                reducer = &basis[i];
                break;
            }
        }
        if (!reducer) {
            remainder.push_back({lead->first, lead->second});
            f.erase(lead);
            continue;
        }
        budget.step();
        Exponents shift = exp_sub(lead->first, reducer->lm());
        Rational c = lead->second / reducer->lc();
        apply_reduction(f, *reducer, shift, c);
    }
    return remainder;
}

TermMap spoly_map(const Elem& a, const Elem& b, const MonomialOrder& ord) {
    Exponents l = exp_lcm(a.lm(), b.lm());
    Exponents ua = exp_sub(l, a.lm());
    Exponents ub = exp_sub(l, b.lm());
    TermMap m(MonoGreater{&ord});
    for (const auto& t : a.terms) {
        Exponents key = exp_add(t.exps, ua);
        Rational c = t.coeff / a.lc();
        auto it = m.find(key);
        if (it == m.end())
            m.emplace(std::move(key), std::move(c));
        else
            it->second += c;
    }
    for (const auto& t : b.terms) {
        Exponents key = exp_add(t.exps, ub);
        Rational c = t.coeff / b.lc();
        auto it = m.find(key);
        if (it == m.end()) {
            m.emplace(std::move(key), -c);
        } else {
            it->second -= c;
            if (sign(it->second) == 0) m.erase(it);
        }
    }
    return m;
}

struct Pair {
    std::size_t i, j;
    Exponents lcm;
    unsigned sugar;
    std::uint32_t lcm_degree;
};

unsigned pair_sugar(const Elem& a, const Elem& b, const Exponents& l) {
    unsigned sa = a.sugar + exp_total_degree(exp_sub(l, a.lm()));
    unsigned sb = b.sugar + exp_total_degree(exp_sub(l, b.lm()));
    return std::max(sa, sb);
}

// Gebauer-Moeller style pair update when element t joins the basis. The
// chain (M) rule, one-representative-per-lcm (F) rule and the coprimality
// criterion are applied conservatively; the B rule prunes old pairs.
void update_pairs(std::vector<Pair>& pairs, const std::vector<Elem>& basis, std::size_t t) {
    const Exponents& lmt = basis[t].lm();

    struct Cand {
        std::size_t i;
        Exponents l;
        bool coprime;
    };
    std::vector<Cand> cands;
    cands.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
        Exponents l = exp_lcm(basis[i].lm(), lmt);
        bool coprime = (l == exp_add(basis[i].lm(), lmt));
        cands.push_back({i, std::move(l), coprime});
    }

    // M rule: drop candidates whose lcm is a proper multiple of another's.
    std::vector<Cand> kept;
    for (const auto& c1 : cands) {
        bool drop = false;
        for (const auto& c2 : cands) {
            if (c2.l != c1.l && exp_divides(c2.l, c1.l)) {
                drop = true;
                break;
            }
        }
        if (!drop) kept.push_back(c1);
    }

    // F rule: one representative per lcm value.
    std::sort(kept.begin(), kept.end(), [](const Cand& a, const Cand& b) {
        if (a.l != b.l) return std::lexicographical_compare(a.l.begin(), a.l.end(),
                                                            b.l.begin(), b.l.end());
        return a.i < b.i;
    });
    std::vector<Cand> reps;
    for (const auto& c : kept) {
        if (!reps.empty() && reps.back().l == c.l) continue;
        reps.push_back(c);
    }

    // B rule on existing pairs.
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                               [&](const Pair& p) {
                                   if (!exp_divides(lmt, p.lcm)) return false;
                                   if (exp_lcm(basis[p.i].lm(), lmt) == p.lcm) return false;
                                   if (exp_lcm(basis[p.j].lm(), lmt) == p.lcm) return false;
                                   return true;
                               }),
                pairs.end());

    for (const auto& c : reps) {
        if (c.coprime) continue; // Buchberger's first criterion
        pairs.push_back(Pair{c.i, t, c.l, pair_sugar(basis[c.i], basis[t], c.l),
                             exp_total_degree(c.l)});
    }
}

std::size_t pick_pair(const std::vector<Pair>& pairs) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        const Pair& a = pairs[k];
        const Pair& b = pairs[best];
        auto key = [](const Pair& p) { return std::tuple(p.sugar, p.lcm_degree, p.i, p.j); };
        if (key(a) < key(b) ||
            (key(a) == key(b) &&
             std::lexicographical_compare(a.lcm.begin(), a.lcm.end(), b.lcm.begin(),
                                          b.lcm.end())))
            best = k;
    }
    return best;
}

void check_ring(const std::vector<MultiPoly>& polys) {
    for (std::size_t i = 1; i < polys.size(); ++i)
        if (polys[i].var_count() != polys[0].var_count())
            throw StructuralError("polynomial system spans different rings");
}

} // namespace

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      const MonomialOrder& ord) {
    if (basis.empty()) throw StructuralError("normal_form requires a nonempty basis");
    for (const auto& g : basis) {
        if (g.is_zero()) throw StructuralError("normal_form basis contains the zero polynomial");
        if (g.var_count() != f.var_count())
            throw StructuralError("normal_form operands span different rings");
    }
    std::vector<Elem> elems;
    elems.reserve(basis.size());
    for (const auto& g : basis) elems.push_back(make_elem(g, ord, g.total_degree()));
    std::vector<bool> alive(elems.size(), true);
    GroebnerStats local;
    Budget budget{std::numeric_limits<std::size_t>::max(), &local};
    auto rem = reduce_full(to_term_map(f.terms(), ord), elems, alive, budget);
    return elem_to_poly(f.var_count(), rem);
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord) {
    if (f.is_zero() || g.is_zero())
        throw DomainError("S-polynomial of a zero polynomial");
    if (f.var_count() != g.var_count())
        throw StructuralError("S-polynomial operands span different rings");
    Elem a = make_elem(f, ord, f.total_degree());
    Elem b = make_elem(g, ord, g.total_degree());
    auto m = spoly_map(a, b, ord);
    std::vector<Term> terms;
    terms.reserve(m.size());
    for (auto& [e, c] : m) terms.push_back({e, c});
    return elem_to_poly(f.var_count(), terms);
}

std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                      const MonomialOrder& ord, const GroebnerOptions& opts,
                                      GroebnerStats* stats) {
    check_ring(gens);
    GroebnerStats local;
    GroebnerStats* st = stats ? stats : &local;
    Budget budget{opts.max_reductions, st};

    std::size_t nvars = gens.empty() ? 0 : gens[0].var_count();
    std::vector<Elem> basis;
    std::vector<Pair> pairs;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        MultiPoly p = g.primitive_integer_form();
        basis.push_back(make_elem(p, ord, p.total_degree()));
        st->basis_size = basis.size();
        update_pairs(pairs, basis, basis.size() - 1);
    }

    std::vector<bool> alive(basis.size(), true);
    while (!pairs.empty()) {
        std::size_t k = pick_pair(pairs);
        Pair p = pairs[k];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(k));
        ++st->spairs_considered;

        auto rem = reduce_full(spoly_map(basis[p.i], basis[p.j], ord), basis, alive, budget);
        if (rem.empty()) continue;
        ++st->spairs_reduced;

        MultiPoly r = elem_to_poly(nvars, rem).primitive_integer_form();
        basis.push_back(make_elem(r, ord, p.sugar));
        alive.push_back(true);
        st->basis_size = basis.size();
        update_pairs(pairs, basis, basis.size() - 1);
    }

    // Minimalize: drop elements whose leading monomial is a multiple of
    // another live leading monomial.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!alive[i]) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !alive[j]) continue;
            if (exp_divides(basis[j].lm(), basis[i].lm())) {
                alive[i] = false;
                break;
            }
        }
    }

    // Full inter-reduction of the survivors.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!alive[i]) continue;
            alive[i] = false;
            auto rem = reduce_full(to_term_map(basis[i].terms, ord), basis, alive, budget);
            alive[i] = true;
            MultiPoly reduced = elem_to_poly(nvars, rem).primitive_integer_form();
            MultiPoly current = elem_to_poly(nvars, basis[i].terms);
            if (reduced != current) {
                if (reduced.is_zero()) {
                    alive[i] = false;
                } else {
                    basis[i] = make_elem(reduced, ord, basis[i].sugar);
                }
                changed = true;
            }
        }
    }

    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (alive[i]) out.push_back(elem_to_poly(nvars, basis[i].terms).primitive_integer_form());
    std::sort(out.begin(), out.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return ord.less(ord.leading_monomial(a), ord.leading_monomial(b));
    });
    st->basis_size = out.size();
    return out;
}

std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens, const std::vector<bool>& keep,
                                 const GroebnerOptions& opts, GroebnerStats* stats) {
    check_ring(gens);
    if (gens.empty()) return {};
    std::size_t nvars = gens[0].var_count();
    if (keep.size() != nvars) throw StructuralError("keep flags do not match the ring");

    std::vector<bool> elim(nvars);
    bool any_elim = false;
    for (std::size_t v = 0; v < nvars; ++v) {
        elim[v] = !keep[v];
        any_elim = any_elim || elim[v];
    }
    MonomialOrder ord = any_elim ? MonomialOrder::block_elimination(nvars, elim)
                                 : MonomialOrder::grevlex();
    // Eliminated variables get priority by recency: later (more derived)
    // variables are compared first, which keeps reductions short on the
    // construction systems this engine sees.
    std::vector<std::size_t> perm;
    for (std::size_t v = nvars; v-- > 0;)
        if (elim[v]) perm.push_back(v);
    for (std::size_t v = nvars; v-- > 0;)
        if (!elim[v]) perm.push_back(v);
    ord.permutation = std::move(perm);

    auto basis = groebner_basis(gens, ord, opts, stats);
    std::vector<MultiPoly> out;
    for (const auto& g : basis) {
        bool keeps_only = true;
        for (std::size_t v = 0; v < nvars && keeps_only; ++v)
            if (elim[v] && g.degree_in(v) > 0) keeps_only = false;
        if (keeps_only) out.push_back(g);
    }
    return out;
}

std::vector<MultiPoly> eliminate(const std::vector<MultiPoly>& gens,
                                 const std::set<std::size_t>& keep, const GroebnerOptions& opts,
                                 GroebnerStats* stats) {
    if (gens.empty()) return {};
    std::vector<bool> flags(gens[0].var_count(), false);
    for (std::size_t v : keep) {
        if (v >= flags.size()) throw StructuralError("kept variable index out of range");
        flags[v] = true;
    }
    return eliminate(gens, flags, opts, stats);
}

} // namespace geoelim::exactmath
