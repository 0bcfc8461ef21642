#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geoelim/errors.hpp"
#include "geoelim/groebner.hpp"
#include "geoelim/univariate.hpp"

#include <random>

using namespace geoelim::exactmath;

namespace {

MultiPoly pxy(const std::string& text) { return parse_poly(text, {"x", "y"}); }

// Textbook resultant w.r.t. the last variable, via the Sylvester matrix with
// univariate polynomial entries and cofactor expansion. Test-only oracle,
// independent of the Groebner path.
MultiPoly det(std::vector<std::vector<MultiPoly>>& m, std::vector<bool>& used, std::size_t row,
              std::size_t nvars) {
    std::size_t n = m.size();
    if (row == n) return MultiPoly::constant(nvars, Rational(1));
    MultiPoly acc(nvars);
    int sign_flip = 1;
    for (std::size_t col = 0; col < n; ++col) {
        if (used[col]) continue;
        if (!m[row][col].is_zero()) {
            used[col] = true;
            MultiPoly sub = det(m, used, row + 1, nvars);
            used[col] = false;
            MultiPoly term = m[row][col] * sub;
            acc = sign_flip > 0 ? acc + term : acc - term;
        }
        sign_flip = -sign_flip;
    }
    return acc;
}

// Coefficients of f seen as a polynomial in variable `var` (descending),
// entries in the same ring with var cleared.
std::vector<MultiPoly> coeffs_in(const MultiPoly& f, std::size_t var) {
    std::uint32_t d = f.degree_in(var);
    std::vector<MultiPoly> out(d + 1, MultiPoly(f.var_count()));
    for (const auto& t : f.terms()) {
        Exponents e = t.exps;
        std::uint32_t k = e[var];
        e[var] = 0;
        out[d - k] += MultiPoly::monomial(std::move(e), t.coeff);
    }
    return out;
}

MultiPoly resultant_oracle(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
    std::uint32_t df = f.degree_in(var), dg = g.degree_in(var);
    REQUIRE(df > 0);
    REQUIRE(dg > 0);
    std::size_t n = df + dg;
    auto fc = coeffs_in(f, var);
    auto gc = coeffs_in(g, var);
    std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(f.var_count())));
    for (std::uint32_t r = 0; r < dg; ++r)
        for (std::size_t k = 0; k < fc.size(); ++k) m[r][r + k] = fc[k];
    for (std::uint32_t r = 0; r < df; ++r)
        for (std::size_t k = 0; k < gc.size(); ++k) m[dg + r][r + k] = gc[k];
    std::vector<bool> used(n, false);
    return det(m, used, 0, f.var_count());
}

} // namespace

TEST_CASE("normal form: self reduction and single division step") {
    MonomialOrder lex = MonomialOrder::lex();
    MultiPoly g = pxy("x^2 + y - 1");
    CHECK(normal_form(g, {g}, lex).is_zero());

    // one hand division step: x^2*y = x*(x*y - 1) + x
    CHECK(normal_form(pxy("x^2*y"), {pxy("x*y - 1")}, lex) == pxy("x"));
}

TEST_CASE("normal form is idempotent and validates its inputs") {
    MonomialOrder lex = MonomialOrder::lex();
    std::vector<MultiPoly> basis{pxy("x*y - 1"), pxy("y^2 - 1")};
    MultiPoly f = pxy("x^2*y^2 + x*y + y");
    MultiPoly r = normal_form(f, basis, lex);
    CHECK(normal_form(r, basis, lex) == r);

    CHECK_THROWS_AS(normal_form(f, {}, lex), geoelim::StructuralError);
    CHECK_THROWS_AS(normal_form(f, {MultiPoly::zero(2)}, lex), geoelim::StructuralError);
    CHECK_THROWS_AS(normal_form(f, {parse_poly("x", {"x"})}, lex), geoelim::StructuralError);
}

TEST_CASE("groebner basis: already reduced inputs pass through") {
    MonomialOrder lex = MonomialOrder::lex();
    auto basis = groebner_basis({parse_poly("x", {"x"})}, lex);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == parse_poly("x", {"x"}));
}

TEST_CASE("groebner basis of circle and line contains 2y^2 - 1") {
    MonomialOrder lex = MonomialOrder::lex();
    auto basis = groebner_basis({pxy("x^2 + y^2 - 1"), pxy("x - y")}, lex);
    bool found = false;
    for (const auto& g : basis)
        if (g == pxy("2*y^2 - 1")) found = true;
    CHECK(found);
}

TEST_CASE("every S-polynomial of a computed basis reduces to zero") {
    MonomialOrder ord = MonomialOrder::grevlex();
    std::vector<std::vector<MultiPoly>> systems{
        {pxy("x^2 + y^2 - 1"), pxy("x*y - 1")},
        {pxy("x^3 - 2*x*y"), pxy("x^2*y - 2*y^2 + x")},
        {pxy("x^2 - y"), pxy("y^2 - x")},
    };
    for (const auto& gens : systems) {
        auto basis = groebner_basis(gens, ord);
        REQUIRE_FALSE(basis.empty());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                CHECK(normal_form(s_polynomial(basis[i], basis[j], ord), basis, ord).is_zero());
        // the original generators reduce to zero as well
        for (const auto& g : gens) CHECK(normal_form(g, basis, ord).is_zero());
    }
}

TEST_CASE("elimination: parametric curve gives its implicit equation") {
    // ring (t, x, y)
    std::vector<std::string> names{"t", "x", "y"};
    MultiPoly f1 = parse_poly("x - t", names);
    MultiPoly f2 = parse_poly("y - t^2", names);
    auto gens = eliminate({f1, f2}, std::set<std::size_t>{1, 2});
    REQUIRE(gens.size() == 1);
    CHECK(equal_up_to_scale(gens[0], parse_poly("y - x^2", names)));
}

TEST_CASE("elimination with everything kept is just a reduced basis") {
    auto gens = eliminate({pxy("x^2 + y^2 - 1"), pxy("x - y")},
                          std::set<std::size_t>{0, 1});
    bool found = false;
    for (const auto& g : gens)
        if (equal_up_to_scale(g, pxy("2*y^2 - 1")) || equal_up_to_scale(g, pxy("2*x^2 - 1")))
            found = true;
    CHECK(found);
}

TEST_CASE("hand-built nested-squares system eliminates to m^2 - 128") {
    // ring (s, t, m): s^2 = 2, t^2 = 16, m*s = 4t
    std::vector<std::string> names{"s", "t", "m"};
    std::vector<MultiPoly> system{
        parse_poly("s^2 - 2", names),
        parse_poly("t^2 - 16", names),
        parse_poly("m*s - 4*t", names),
    };
    auto gens = eliminate(system, std::set<std::size_t>{2});
    REQUIRE(gens.size() == 1);
    CHECK(equal_up_to_scale(gens[0], parse_poly("m^2 - 128", names)));
}

TEST_CASE("elimination agrees with the resultant on random bivariate systems") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::uint32_t> ex(0, 2);
    auto random_poly = [&]() {
        MultiPoly acc(2);
        for (int t = 0; t < 4; ++t)
            acc += MultiPoly::monomial({ex(rng), ex(rng)}, Rational(coeff(rng)));
        return acc;
    };
    int done = 0;
    while (done < 100) {
        MultiPoly f = random_poly();
        MultiPoly g = random_poly();
        if (f.degree_in(1) == 0 || g.degree_in(1) == 0) continue;
        MultiPoly res = resultant_oracle(f, g, 1);
        auto gens = eliminate({f, g}, std::set<std::size_t>{0});
        if (gens.empty()) {
            // zero elimination ideal forces a vanishing resultant
            CHECK(res.is_zero());
            ++done;
            continue;
        }
        REQUIRE(gens.size() == 1);
        if (res.is_zero()) {
            ++done;
            continue;
        }
        // the univariate generator divides the resultant (up to scalar)
        std::vector<std::optional<std::size_t>> to_uni{0, std::nullopt};
        MultiPoly gen_u = gens[0].remapped(to_uni, 1);
        MultiPoly res_u = res.remapped(to_uni, 1);
        if (gen_u.is_constant()) {
            ++done;
            continue;
        }
        auto quotient = divide_exact_univariate(res_u, gen_u);
        CHECK(quotient.has_value());
        ++done;
    }
}

TEST_CASE("random ideals pass Buchberger's criterion under several orders") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<std::uint32_t> ex(0, 2);
    std::uniform_int_distribution<int> gen_count(2, 3);
    auto random_poly = [&]() {
        MultiPoly acc(3);
        for (int t = 0; t < 3; ++t)
            acc += MultiPoly::monomial({ex(rng), ex(rng), ex(rng)}, Rational(coeff(rng)));
        return acc;
    };
    std::vector<MonomialOrder> orders{
        MonomialOrder::lex(),
        MonomialOrder::grevlex(),
        MonomialOrder::block_elimination(3, {true, false, false}),
        MonomialOrder::block_elimination(3, {true, true, false}),
    };
    int verified = 0;
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<MultiPoly> gens;
        int n = gen_count(rng);
        for (int k = 0; k < n; ++k) {
            MultiPoly f = random_poly();
            if (!f.is_zero()) gens.push_back(f);
        }
        if (gens.empty()) continue;
        for (const auto& ord : orders) {
            std::vector<MultiPoly> basis;
            try {
                basis = groebner_basis(gens, ord);
            } catch (const geoelim::ResourceError&) {
                continue; // rare lex blowup: budget behaves as specified
            }
            if (basis.empty()) continue;
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = i + 1; j < basis.size(); ++j)
                    CHECK(normal_form(s_polynomial(basis[i], basis[j], ord), basis, ord)
                              .is_zero());
            for (const auto& g : gens)
                CHECK(normal_form(g, basis, ord).is_zero());
            // reduced basis: no element's monomial is divisible by another lead
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    if (i == j) continue;
                    for (const auto& term : basis[i].terms())
                        CHECK_FALSE(exp_divides(ord.leading_monomial(basis[j]), term.exps));
                }
            ++verified;
        }
    }
    CHECK(verified > 100);
}

TEST_CASE("reduction budget aborts loudly") {
    GroebnerOptions opts;
    opts.max_reductions = 3;
    std::vector<MultiPoly> gens{pxy("x^3 - 2*x*y"), pxy("x^2*y - 2*y^2 + x"),
                                pxy("x^2 + y^2 - 1")};
    CHECK_THROWS_AS(groebner_basis(gens, MonomialOrder::lex(), opts), geoelim::ResourceError);
}
