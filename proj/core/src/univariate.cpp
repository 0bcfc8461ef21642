#include "geoelim/univariate.hpp"

#include "geoelim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace geoelim::exactmath {

namespace {

// Dense univariate representation over Q, ascending exponents, trimmed.
using Dense = std::vector<Rational>;

void trim(Dense& p) {
    while (!p.empty() && sign(p.back()) == 0) p.pop_back();
}

int deg(const Dense& p) { return static_cast<int>(p.size()) - 1; }

Dense from_multipoly(const MultiPoly& f) {
    auto used = f.used_vars();
    if (used.size() > 1) throw DomainError("univariate polynomial expected");
    std::size_t var = used.empty() ? 0 : used[0];
    Dense p;
    for (const auto& t : f.terms()) {
        std::uint32_t e = used.empty() ? 0 : t.exps[var];
        if (p.size() <= e) p.resize(e + 1, Rational(0));
        p[e] = t.coeff;
    }
    trim(p);
    return p;
}

MultiPoly to_multipoly(const Dense& p) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (sign(p[i]) != 0) terms.push_back({Exponents{static_cast<std::uint32_t>(i)}, p[i]});
    return MultiPoly::from_terms(1, std::move(terms));
}

Dense derivative(const Dense& p) {
    Dense d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    trim(d);
    return d;
}

Rational eval(const Dense& p, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

Dense mul(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) return {};
    Dense r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Division with remainder in Q[x].
void divmod(const Dense& a, const Dense& b, Dense& q, Dense& r) {
    if (b.empty()) throw DomainError("division by the zero polynomial");
    r = a;
    q.assign(a.size(), Rational(0));
    while (deg(r) >= deg(b)) {
        std::size_t shift = static_cast<std::size_t>(deg(r) - deg(b));
        Rational c = r.back() / b.back();
        q[shift] += c;
        for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
        trim(r);
        if (r.empty()) break;
    }
    trim(q);
}

Dense div_exact(const Dense& a, const Dense& b) {
    Dense q, r;
    divmod(a, b, q, r);
    if (!r.empty()) throw DomainError("inexact univariate division");
    return q;
}

// Monic gcd in Q[x].
Dense gcd_q(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Dense q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Positive integer-primitive scaling.
Dense primitive(const Dense& p) {
    if (p.empty()) return p;
    return from_multipoly(to_multipoly(p).primitive_integer_form());
}

// Integer-primitive scaling by a positive constant only; signs survive, which
// the Sturm chain depends on.
Dense scale_positive(const Dense& p) {
    if (p.empty()) return p;
    Int den_lcm(1);
    for (const auto& c : p) den_lcm = lcm(den_lcm, Int(c.get_den()));
    Int content(0);
    for (const auto& c : p) content = gcd(content, Int(c.get_num() * (den_lcm / c.get_den())));
    if (content == 0) return p;
    Rational scale = make_rational(den_lcm, content);
    Dense out = p;
    for (auto& c : out) c *= scale;
    return out;
}

std::vector<Dense> sturm_chain(const Dense& f) {
    std::vector<Dense> chain;
    chain.push_back(scale_positive(f));
    Dense d = derivative(f);
    if (!d.empty()) chain.push_back(scale_positive(d));
    while (chain.size() >= 2 && !chain.back().empty() && deg(chain.back()) >= 0) {
        const Dense& a = chain[chain.size() - 2];
        const Dense& b = chain.back();
        if (deg(b) == 0) break;
        Dense q, r;
        divmod(a, b, q, r);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(scale_positive(r));
    }
    return chain;
}

int sign_variations(const std::vector<Dense>& chain, const Rational& x) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign(eval(p, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int sign_variations_at_infinity(const std::vector<Dense>& chain, bool positive) {
    int count = 0, prev = 0;
    for (const auto& p : chain) {
        if (p.empty()) continue;
        int s = sign(p.back());
        if (!positive && (deg(p) & 1)) s = -s;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

Rational cauchy_bound(const Dense& p) {
    Rational lead = abs(p.back());
    Rational m(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        Rational a = abs(p[i]) / lead;
        if (a > m) m = a;
    }
    return m + 1;
}

struct Isolated {
    Rational lo, hi;             // root strictly inside (lo, hi), or exact
    std::optional<Rational> exact;
};

// Isolating intervals for the distinct real roots of a squarefree f.
std::vector<Isolated> isolate_roots(const Dense& f) {
    std::vector<Isolated> out;
    if (deg(f) < 1) return out;
    auto chain = sturm_chain(f);
    Rational bound = cauchy_bound(f);
    struct Range {
        Rational lo, hi;
        int count;
    };
    Rational lo = -bound, hi = bound;
    // Endpoints of the Cauchy bound are never roots.
    std::vector<Range> work{{lo, hi, sign_variations(chain, lo) - sign_variations(chain, hi)}};
    while (!work.empty()) {
        Range r = work.back();
        work.pop_back();
        if (r.count <= 0) continue;
        if (r.count == 1) {
            // Shrink away any endpoint root situation by checking the midpoint.
            out.push_back({r.lo, r.hi, std::nullopt});
            continue;
        }
        Rational mid = (r.lo + r.hi) / 2;
        if (sign(eval(f, mid)) == 0) {
            out.push_back({mid, mid, mid});
            // Perturb around the exact root so the halves exclude it.
            Rational eps = (r.hi - r.lo) / 1024;
            Rational a = mid - eps, b = mid + eps;
            while (sign(eval(f, a)) == 0) a -= eps;
            while (sign(eval(f, b)) == 0) b += eps;
            int left = sign_variations(chain, r.lo) - sign_variations(chain, a);
            int right = sign_variations(chain, b) - sign_variations(chain, r.hi);
            if (left > 0) work.push_back({r.lo, a, left});
            if (right > 0) work.push_back({b, r.hi, right});
        } else {
            int left = sign_variations(chain, r.lo) - sign_variations(chain, mid);
            int right = sign_variations(chain, mid) - sign_variations(chain, r.hi);
            if (left > 0) work.push_back({r.lo, mid, left});
            if (right > 0) work.push_back({mid, r.hi, right});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Isolated& a, const Isolated& b) { return a.lo < b.lo; });
    return out;
}

// Exact bisection until the bracket is narrower than `width`.
void refine(const Dense& f, Isolated& iv, const Rational& width) {
    if (iv.exact) return;
    int slo = sign(eval(f, iv.lo));
    while (iv.hi - iv.lo > width) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int sm = sign(eval(f, mid));
        if (sm == 0) {
            iv.exact = mid;
            iv.lo = iv.hi = mid;
            return;
        }
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
}

// Smallest-denominator rational in the closed interval [lo, hi].
Rational simplest_rational(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw DomainError("empty interval");
    if (sign(lo) <= 0 && sign(hi) >= 0) return Rational(0);
    if (sign(hi) < 0) return -simplest_rational(-hi, -lo);
    Int c = ceil_int(lo);
    if (Rational(c) <= hi) return Rational(c);
    Int n = floor_int(lo);
    Rational fl = lo - Rational(n), fh = hi - Rational(n);
    return Rational(n) + 1 / simplest_rational(1 / fh, 1 / fl);
}

// All rational roots of a squarefree primitive integer polynomial, found by
// exact bracketing plus simplest-rational reconstruction (complete because a
// rational root's denominator divides the leading coefficient).
std::vector<Rational> rational_roots(const Dense& f) {
    std::vector<Rational> roots;
    if (deg(f) < 1) return roots;
    Int lead = f.back().get_num(); // integer coefficients
    Rational width = make_rational(Int(1), 2 * lead * lead);
    auto intervals = isolate_roots(f);
    for (auto& iv : intervals) {
        refine(f, iv, width);
        if (iv.exact) {
            roots.push_back(*iv.exact);
            continue;
        }
        Rational cand = simplest_rational(iv.lo, iv.hi);
        if (sign(eval(f, cand)) == 0) roots.push_back(cand);
    }
    return roots;
}

MultiPoly linear_factor(const Rational& root) {
    // den*x - num, primitive with positive lead.
    MultiPoly x = MultiPoly::variable(1, 0);
    return (x * Rational(root.get_den()) - MultiPoly::constant(1, Rational(root.get_num())))
        .primitive_integer_form();
}

bool is_even_poly(const Dense& p) {
    for (std::size_t i = 1; i < p.size(); i += 2)
        if (sign(p[i]) != 0) return false;
    return deg(p) >= 4;
}

Dense compress_even(const Dense& p) {
    Dense q;
    for (std::size_t i = 0; i < p.size(); i += 2) q.push_back(p[i]);
    trim(q);
    return q;
}

Dense expand_even(const Dense& p) {
    Dense q(2 * p.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) q[2 * i] = p[i];
    trim(q);
    return q;
}

// Factors a squarefree primitive integer polynomial into irreducible-where-
// known parts. May leave a flagged remainder of degree >= 3.
void factor_squarefree(const Dense& w, std::vector<UniFactor>& parts, unsigned multiplicity,
                       bool& fully) {
    Dense rest = w;
    for (const Rational& root : rational_roots(rest)) {
        MultiPoly lf = linear_factor(root);
        parts.push_back({lf, multiplicity, true});
        rest = div_exact(rest, from_multipoly(lf));
    }
    rest = primitive(rest);
    if (deg(rest) <= 0) return;
    if (deg(rest) == 2) {
        parts.push_back({to_multipoly(rest).primitive_integer_form(), multiplicity, true});
        return;
    }
    if (is_even_poly(rest)) {
        // Split through the image in the halved variable: any rational root b/a
        // of the image contributes a*x^2 - b, which has no rational root here
        // (those were already removed), hence is irreducible.
        Dense image = compress_even(rest);
        std::vector<UniFactor> image_parts;
        bool image_fully = true;
        factor_squarefree(primitive(image), image_parts, multiplicity, image_fully);
        bool usable = true;
        for (const auto& fp : image_parts)
            if (fp.poly.degree_in(0) > 1) usable = false;
        if (usable && !image_parts.empty()) {
            for (const auto& fp : image_parts) {
                Dense quad = expand_even(from_multipoly(fp.poly));
                parts.push_back({to_multipoly(quad).primitive_integer_form(), multiplicity,
                                 deg(quad) == 2});
                rest = div_exact(rest, quad);
            }
            rest = primitive(rest);
            if (deg(rest) <= 0) return;
        }
    }
    parts.push_back({to_multipoly(rest).primitive_integer_form(), multiplicity, false});
    fully = false;
}

} // namespace

MultiPoly UniFactorization::expand() const {
    MultiPoly acc = MultiPoly::constant(1, content);
    for (const auto& part : parts)
        for (unsigned k = 0; k < part.multiplicity; ++k) acc = acc * part.poly;
    return acc;
}

MultiPoly squarefree_part(const MultiPoly& f) {
    if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
    Dense p = from_multipoly(f);
    if (deg(p) < 1) return MultiPoly::constant(1, Rational(1));
    Dense g = gcd_q(p, derivative(p));
    Dense sf = deg(g) < 1 ? p : div_exact(p, g);
    return to_multipoly(sf).primitive_integer_form();
}

UniFactorization factor_univariate(const MultiPoly& f) {
    if (f.is_zero()) throw DomainError("factorization of the zero polynomial");
    Dense p = from_multipoly(f);
    UniFactorization out;
    out.content = Rational(1);
    if (deg(p) < 1) {
        out.content = p.empty() ? Rational(0) : p[0];
        return out;
    }

    // Trailing zero coefficients give the x^k part.
    unsigned k = 0;
    while (sign(p[k]) == 0) ++k;
    if (k > 0) {
        out.parts.push_back({MultiPoly::variable(1, 0), k, true});
        p.erase(p.begin(), p.begin() + k);
    }

    // Yun's squarefree decomposition.
    Dense prim = primitive(p);
    Dense g = gcd_q(prim, derivative(prim));
    if (deg(g) < 1) {
        factor_squarefree(prim, out.parts, 1, out.fully_factored);
    } else {
        Dense w = div_exact(prim, g);
        Dense y = div_exact(derivative(prim), g);
        unsigned i = 1;
        while (deg(w) > 0) {
            Dense z = y;
            Dense wd = derivative(w);
            z.resize(std::max(z.size(), wd.size()), Rational(0));
            for (std::size_t t = 0; t < wd.size(); ++t) z[t] -= wd[t];
            trim(z);
            if (z.empty()) {
                factor_squarefree(primitive(w), out.parts, i, out.fully_factored);
                break;
            }
            Dense h = gcd_q(w, z);
            if (deg(h) > 0) factor_squarefree(primitive(h), out.parts, i, out.fully_factored);
            w = div_exact(w, h);
            y = div_exact(z, h);
            ++i;
        }
    }

    std::sort(out.parts.begin(), out.parts.end(), [](const UniFactor& a, const UniFactor& b) {
        if (a.poly.degree_in(0) != b.poly.degree_in(0))
            return a.poly.degree_in(0) < b.poly.degree_in(0);
        return a.poly.to_string() < b.poly.to_string();
    });

    // Exact content so that content * product(parts) reproduces the input.
    MultiPoly product = out.expand();
    Dense prod = from_multipoly(product);
    Dense orig = from_multipoly(f);
    out.content = orig.back() / prod.back();
    return out;
}

std::vector<RootCandidate> extract_algebraic(const MultiPoly& f) {
    if (f.is_zero()) throw DomainError("root extraction from the zero polynomial");
    UniFactorization fact = factor_univariate(f);
    std::vector<RootCandidate> out;
    for (const auto& part : fact.parts) {
        Dense p = from_multipoly(part.poly);
        if (deg(p) == 1) {
            Rational root = -p[0] / p[1];
            if (sign(root) > 0)
                out.push_back({to_double(root), AlgebraicNumber::rational(root), part.poly});
        } else if (deg(p) == 2) {
            // roots (-b +- sqrt(b^2 - 4ac)) / (2a), integer coefficients
            Int a = p[2].get_num(), b = p[1].get_num(), c = p[0].get_num();
            Int disc = b * b - 4 * a * c;
            if (sign(Rational(disc)) <= 0) continue;
            Int s, d;
            squarefree_decompose(disc, s, d);
            if (d == 1) {
                // Square discriminant: rational roots (possible when callers
                // hand us a reducible quadratic directly).
                for (int sgn : {-1, 1}) {
                    Rational root = make_rational(-b + sgn * s, 2 * a);
                    if (sign(root) > 0)
                        out.push_back({to_double(root), AlgebraicNumber::rational(root), part.poly});
                }
            } else {
                for (int sgn : {-1, 1}) {
                    AlgebraicNumber n = AlgebraicNumber::surd(-b, sgn * s, 2 * a, d);
                    if (n.to_double() > 0) out.push_back({n.to_double(), n, part.poly});
                }
            }
        } else if (deg(p) >= 3) {
            for (double root : real_roots_numeric(part.poly))
                if (root > 0) out.push_back({root, std::nullopt, part.poly});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RootCandidate& a, const RootCandidate& b) { return a.approx < b.approx; });
    return out;
}

std::vector<double> real_roots_numeric(const MultiPoly& f, double tol) {
    MultiPoly sf = squarefree_part(f);
    Dense p = from_multipoly(sf);
    std::vector<double> roots;
    if (deg(p) < 1) return roots;
    Rational width = tol > 0 ? Rational(tol) : make_rational(1, 1000000000);
    auto intervals = isolate_roots(p);
    for (auto& iv : intervals) {
        refine(p, iv, width);
        roots.push_back(iv.exact ? to_double(*iv.exact) : to_double((iv.lo + iv.hi) / 2));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

int sturm_root_count(const MultiPoly& f) {
    MultiPoly sf = squarefree_part(f);
    Dense p = from_multipoly(sf);
    if (deg(p) < 1) return 0;
    auto chain = sturm_chain(p);
    return sign_variations_at_infinity(chain, false) - sign_variations_at_infinity(chain, true);
}

int sturm_root_count(const MultiPoly& f, const Rational& lo, const Rational& hi) {
    MultiPoly sf = squarefree_part(f);
    Dense p = from_multipoly(sf);
    if (deg(p) < 1) return 0;
    auto chain = sturm_chain(p);
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::optional<MultiPoly> divide_exact_univariate(const MultiPoly& f, const MultiPoly& divisor) {
    Dense a = from_multipoly(f);
    Dense b = from_multipoly(divisor);
    if (b.empty()) return std::nullopt;
    Dense q, r;
    divmod(a, b, q, r);
    if (!r.empty()) return std::nullopt;
    return to_multipoly(q);
}

} // namespace geoelim::exactmath
