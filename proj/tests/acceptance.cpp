// Acceptance suite: runs every headline requirement end to end and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include "geoelim/errors.hpp"
#include "geoelim/groebner.hpp"
#include "geoelim/locus.hpp"
#include "geoelim/prover.hpp"
#include "geoelim/report.hpp"
#include "geoelim/script.hpp"
#include "geoelim/univariate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace geoelim;
using exactmath::AlgebraicNumber;
using exactmath::MultiPoly;
using exactmath::Rational;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    bool ok = true;
    std::ostringstream detail;
    double seconds = 0;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

void run_criterion(const std::string& name, double time_limit_s,
                   const std::function<void(Criterion&)>& body) {
    Criterion c;
    c.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail << "exception: " << e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit_s > 0 && c.seconds > time_limit_s) {
        c.ok = false;
        c.detail << (c.detail.str().empty() ? "" : "; ") << "exceeded time limit of "
                 << time_limit_s << "s";
    }
    if (!c.ok) ++failures;
    std::printf("[%s] %-34s (%6.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", c.name.c_str(), c.seconds,
                c.detail.str().empty() ? "" : " -- ", c.detail.str().c_str());
    std::fflush(stdout);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

dsl::Script corpus_script(const std::string& name) {
    return dsl::parse_script(read_file(std::string(GEOELIM_CORPUS_DIR) + "/" + name));
}

prover::RelationResult solve_relation(const dsl::Script& script, unsigned seed = 1) {
    const auto* query = std::get_if<prover::RelationQuery>(&script.queries.at(0).value);
    if (!query) throw ConfigError("script has no relation query");
    prover::ProveOptions opts;
    opts.seed = seed;
    return discover_ratio(script.program, *query, opts);
}

MultiPoly pm(const std::string& text) { return exactmath::parse_poly(text, {"m"}); }
MultiPoly px(const std::string& text) { return exactmath::parse_poly(text, {"x"}); }

// ---- criteria ----

void ratio_answer(Criterion& c, const std::string& file, const AlgebraicNumber& want_ratio,
                  const MultiPoly& want_minpoly) {
    prover::RelationResult r = solve_relation(corpus_script(file));
    c.require(r.ratio == want_ratio, "ratio is " + r.ratio.to_text() + ", expected " +
                                         want_ratio.to_text());
    c.require(r.minimal_polynomial == want_minpoly,
              "minimal polynomial is " + r.minimal_polynomial.to_string({"m"}));
}

void problem06(Criterion& c) {
    ratio_answer(c, "problem06.gcs", AlgebraicNumber::surd(0, 8, 1, 2), pm("m^2 - 128"));
}

void problem15(Criterion& c) {
    dsl::Script script = corpus_script("problem15.gcs");
    prover::RelationResult r = solve_relation(script);
    c.require(r.ratio == AlgebraicNumber::surd(0, 1, 2, 10),
              "ratio is " + r.ratio.to_text() + ", expected 1/2*sqrt(10)");
    c.require(square_ratio(r) == exactmath::make_rational(5, 2),
              "squared ratio is " + exactmath::to_string(square_ratio(r)));
}

void problem23(Criterion& c) {
    ratio_answer(c, "problem23.gcs",
                 AlgebraicNumber::rational(exactmath::make_rational(253, 34)), pm("34*m - 253"));
}

void problem47(Criterion& c) {
    ratio_answer(c, "problem47.gcs", AlgebraicNumber::surd(0, 4, 7, 21), pm("7*m^2 - 48"));
}

void problem25(Criterion& c) {
    dsl::Script script = corpus_script("problem25.gcs");
    const auto* q = std::get_if<dsl::LocusQuery>(&script.queries.at(0).value);
    if (!q) throw ConfigError("problem25 script has no locus query");
    locus::LocusOptions opts;
    opts.region = {-1, -1, 2, 2};
    locus::LocusResult r = locus_equation(script.program, q->condition, q->traced, opts);

    MultiPoly quintic = px("64*x^5 - 128*x^4 + 80*x^3 - 17*x^2 + x");
    c.require(r.x_minimal.has_value(), "no x-coordinate polynomial");
    if (!r.x_minimal) return;
    c.require(equal_up_to_scale(*r.x_minimal, quintic),
              "x polynomial is " + r.x_minimal->to_string({"x"}));

    std::vector<std::string> got;
    if (r.x_factors)
        for (const auto& part : r.x_factors->parts) got.push_back(part.poly.to_string({"x"}));
    std::sort(got.begin(), got.end());
    std::vector<std::string> want{"16*x^2 - 12*x + 1", "4*x - 1", "x", "x - 1"};
    c.require(got == want, "factor list differs");

    auto roots = exactmath::real_roots_numeric(*r.x_minimal, 1e-12);
    std::vector<double> expected{0.0, (6 - 2 * std::sqrt(5.0)) / 16, 0.25,
                                 (6 + 2 * std::sqrt(5.0)) / 16, 1.0};
    c.require(roots.size() == expected.size(), "root count differs");
    for (std::size_t i = 0; i < roots.size() && i < expected.size(); ++i)
        c.require(std::abs(roots[i] - expected[i]) < 1e-9, "root " + std::to_string(i) +
                                                               " off by more than 1e-9");
}

void problem58(Criterion& c) {
    dsl::Script script = corpus_script("problem58.gcs");
    const auto* q1 = std::get_if<dsl::LocusQuery>(&script.queries.at(0).value);
    const auto* q2 = std::get_if<dsl::LocusQuery>(&script.queries.at(1).value);
    if (!q1 || !q2) throw ConfigError("problem58 script needs two locus queries");
    locus::LocusOptions opts;
    opts.region = {0, 0, 1, 1};
    auto a = locus_equation(script.program, q1->condition, q1->traced, opts);
    auto b = locus_equation(script.program, q2->condition, q2->traced, opts);
    auto points = locus::intersect_loci_numeric(a, b, {0, 0, 1, 1}, 1e-9);
    c.require(!points.empty(), "no numeric intersection in [0,1]x[0,1]");

    const double probe_x = 0.4739140532, probe_y = 0.24828147621;
    double nearest = 1e9;
    for (const auto& p : points)
        nearest = std::min(nearest, std::hypot(p[0] - probe_x, p[1] - probe_y));
    {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "recorded intersection coordinates not reproduced at 1e-6: nearest "
                      "computed intersection is %.10g away (found (%.10g, %.10g))",
                      nearest, points.empty() ? 0.0 : points[0][0],
                      points.empty() ? 0.0 : points[0][1]);
        c.require(nearest <= 1e-6, buf);
    }

    double k = locus::evaluate_conjecture_length(script.program, q1->traced,
                                                 {probe_x, probe_y}, "k", opts);
    c.require(std::abs(k - 0.618294458) <= 1e-6,
              "k at the probe point is " + std::to_string(k));

    // the near-miss that invites the wrong closed form stays a near miss
    double golden = (std::sqrt(5.0) - 1) / 2;
    c.require(std::abs(0.618294458 - golden) > 1e-4,
              "recorded k does not separate from (sqrt(5)-1)/2");

    // documented area values: conjectured vs correct, ratio pinned
    double conjectured = std::sqrt(3.0) / 2 * (std::sqrt(5.0) + 1) * (std::sqrt(5.0) + 1);
    double correct = (6 + 7 * std::sqrt(3.0)) / 2;
    c.require(std::abs(conjectured - 9.06913) < 1e-5, "conjectured area drifted");
    c.require(std::abs(correct - 9.06217) < 1e-5, "correct area drifted");
    c.require(std::abs(conjectured / correct - 1.000767) < 1e-5, "area ratio drifted");
}

void property_buchberger(Criterion& c) {
    // S-polynomial zero-reduction on every corpus ideal (the compiled
    // constraint systems, query equation included).
    using construction::CompileOptions;
    for (const char* name :
         {"problem06.gcs", "problem15.gcs", "problem23.gcs", "problem47.gcs"}) {
        dsl::Script script = corpus_script(name);
        auto model = compile(script.program, CompileOptions{});
        const auto* query = std::get_if<prover::RelationQuery>(&script.queries.at(0).value);
        std::size_t ratio_var = model.add_variable(construction::VarRole::Query, "ratio");
        MultiPoly m = MultiPoly::variable(model.var_count(), ratio_var);
        model.add_constraint(
            (m * model.value_expr(query->left) - model.value_expr(query->right))
                .primitive_integer_form());
        std::vector<bool> elim(model.var_count(), true);
        elim[ratio_var] = false;
        auto ord = exactmath::MonomialOrder::block_elimination(model.var_count(), elim);
        auto basis = groebner_basis(model.constraints(), ord);
        bool all_zero = true;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                if (!normal_form(s_polynomial(basis[i], basis[j], ord), basis, ord).is_zero())
                    all_zero = false;
        c.require(all_zero, std::string("S-polynomial criterion failed on ") + name);
    }
}

void property_resultant(Criterion& c) {
    // elimination vs an independent Sylvester-resultant oracle on 100 random
    // small bivariate systems
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::uint32_t> ex(0, 2);
    auto random_poly = [&]() {
        MultiPoly acc(2);
        for (int t = 0; t < 4; ++t)
            acc += MultiPoly::monomial({ex(rng), ex(rng)}, Rational(coeff(rng)));
        return acc;
    };
    auto coeffs_in = [](const MultiPoly& f, std::size_t var) {
        std::uint32_t d = f.degree_in(var);
        std::vector<MultiPoly> out(d + 1, MultiPoly(f.var_count()));
        for (const auto& t : f.terms()) {
            exactmath::Exponents e = t.exps;
            std::uint32_t k = e[var];
            e[var] = 0;
            out[d - k] += MultiPoly::monomial(std::move(e), t.coeff);
        }
        return out;
    };
    std::function<MultiPoly(std::vector<std::vector<MultiPoly>>&, std::vector<bool>&,
                            std::size_t)>
        det = [&](std::vector<std::vector<MultiPoly>>& mat, std::vector<bool>& used,
                  std::size_t row) {
            std::size_t n = mat.size();
            if (row == n) return MultiPoly::constant(2, Rational(1));
            MultiPoly acc(2);
            int sgn = 1;
            for (std::size_t col = 0; col < n; ++col) {
                if (used[col]) continue;
                if (!mat[row][col].is_zero()) {
                    used[col] = true;
                    MultiPoly sub = det(mat, used, row + 1);
                    used[col] = false;
                    acc = sgn > 0 ? acc + mat[row][col] * sub : acc - mat[row][col] * sub;
                }
                sgn = -sgn;
            }
            return acc;
        };

    int done = 0;
    while (done < 100) {
        MultiPoly f = random_poly(), g = random_poly();
        if (f.degree_in(1) == 0 || g.degree_in(1) == 0) continue;
        auto fc = coeffs_in(f, 1), gc = coeffs_in(g, 1);
        std::size_t n = f.degree_in(1) + g.degree_in(1);
        std::vector<std::vector<MultiPoly>> mat(n, std::vector<MultiPoly>(n, MultiPoly(2)));
        for (std::uint32_t r = 0; r < g.degree_in(1); ++r)
            for (std::size_t k = 0; k < fc.size(); ++k) mat[r][r + k] = fc[k];
        for (std::uint32_t r = 0; r < f.degree_in(1); ++r)
            for (std::size_t k = 0; k < gc.size(); ++k) mat[g.degree_in(1) + r][r + k] = gc[k];
        std::vector<bool> used(n, false);
        MultiPoly res = det(mat, used, 0);

        auto gens = exactmath::eliminate({f, g}, std::set<std::size_t>{0});
        if (gens.empty()) {
            c.require(res.is_zero(), "zero elimination ideal with nonzero resultant");
        } else if (!res.is_zero()) {
            std::vector<std::optional<std::size_t>> to_uni{0, std::nullopt};
            MultiPoly gen_u = gens.front().remapped(to_uni, 1);
            MultiPoly res_u = res.remapped(to_uni, 1);
            if (!gen_u.is_constant())
                c.require(exactmath::divide_exact_univariate(res_u, gen_u).has_value(),
                          "eliminated generator does not divide the resultant");
        }
        ++done;
    }
}

void property_factor_roundtrip(Criterion& c) {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<int> kind(0, 1);
    for (int iter = 0; iter < 1000; ++iter) {
        MultiPoly f = MultiPoly::constant(1, Rational(1));
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            int a = coeff(rng);
            if (a == 0) a = 1 + kind(rng);
            MultiPoly factor = MultiPoly::monomial({static_cast<std::uint32_t>(kind(rng) + 1)},
                                                   Rational(a));
            factor += MultiPoly::constant(1, Rational(coeff(rng)));
            if (factor.degree_in(0) == 2)
                factor += MultiPoly::monomial({1}, Rational(coeff(rng)));
            f = f * factor;
        }
        auto fact = exactmath::factor_univariate(f);
        if (!(fact.expand() == f)) {
            c.require(false, "round-trip failed at iteration " + std::to_string(iter));
            return;
        }
    }
}

void property_seed_independence(Criterion& c) {
    struct Expect {
        const char* file;
        AlgebraicNumber ratio;
    };
    std::vector<Expect> expects;
    expects.push_back({"problem06.gcs", AlgebraicNumber::surd(0, 8, 1, 2)});
    expects.push_back({"problem15.gcs", AlgebraicNumber::surd(0, 1, 2, 10)});
    expects.push_back({"problem23.gcs",
                       AlgebraicNumber::rational(exactmath::make_rational(253, 34))});
    expects.push_back({"problem47.gcs", AlgebraicNumber::surd(0, 4, 7, 21)});
    for (const auto& expect : expects) {
        dsl::Script script = corpus_script(expect.file);
        for (unsigned seed : {1u, 7u, 23u, 101u, 9001u}) {
            prover::RelationResult r = solve_relation(script, seed);
            if (!(r.ratio == expect.ratio) ||
                r.verdict != prover::RelationResult::Verdict::Unique) {
                c.require(false, std::string(expect.file) + " diverged at seed " +
                                     std::to_string(seed));
                return;
            }
        }
    }
}

void property_parser_fuzz(Criterion&) {
    // any escape other than a positioned diagnostic fails via the outer handler
    std::string base = read_file(std::string(GEOELIM_CORPUS_DIR) + "/problem58.gcs");
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1);
    for (int iter = 0; iter < 10000; ++iter) {
        std::string text;
        if (iter % 2 == 0) {
            text = base;
            for (int k = 0; k < 6; ++k) text[pos(rng)] = static_cast<char>(byte(rng));
        } else {
            std::uniform_int_distribution<std::size_t> len(0, 200);
            std::size_t n = len(rng);
            for (std::size_t k = 0; k < n; ++k) text.push_back(static_cast<char>(byte(rng)));
        }
        try {
            dsl::parse_script(text);
        } catch (const ParseError&) {
        } catch (const CompileError&) {
        }
    }
}

} // namespace

int main() {
    std::printf("acceptance suite (corpus: %s)\n", GEOELIM_CORPUS_DIR);
    run_criterion("problem06-ratio", 5, problem06);
    run_criterion("problem15-ratio-and-square", 10, problem15);
    run_criterion("problem23-ratio", 5, problem23);
    run_criterion("problem47-ratio", 15, problem47);
    run_criterion("problem25-locus-quintic", 60, problem25);
    run_criterion("problem58-workflow", 60, problem58);
    run_criterion("property-buchberger-zero-reduction", 0, property_buchberger);
    run_criterion("property-elimination-vs-resultant", 0, property_resultant);
    run_criterion("property-factor-roundtrip", 0, property_factor_roundtrip);
    run_criterion("property-seed-independence", 0, property_seed_independence);
    run_criterion("property-parser-fuzz", 0, property_parser_fuzz);

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
