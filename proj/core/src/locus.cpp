#include "geoelim/locus.hpp"

#include "geoelim/errors.hpp"
#include "geoelim/model.hpp"
#include "geoelim/witness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace geoelim::locus {

using construction::AlgebraicModel;
using construction::CompileOptions;
using construction::ConstructionProgram;
using construction::StepKind;
using exactmath::MultiPoly;
using exactmath::Rational;

namespace {

MultiPoly condition_polynomial(const AlgebraicModel& model, const LocusCondition& condition) {
    if (const auto* col = std::get_if<Collinear>(&condition)) {
        auto [px, py] = model.point_coords(col->p);
        auto [qx, qy] = model.point_coords(col->q);
        auto [rx, ry] = model.point_coords(col->r);
        return (qx - px) * (ry - py) - (qy - py) * (rx - px);
    }
    if (const auto* ratio = std::get_if<RatioEq>(&condition)) {
        MultiPoly a = model.value_expr(ratio->len_a);
        MultiPoly b = model.value_expr(ratio->len_b);
        if (!model.length_var(ratio->len_a) || !model.length_var(ratio->len_b))
            throw QueryError("ratio conditions require segment length labels");
        // a/b = t squared: den^2 * a^2 = num^2 * d * b^2 for t = (num/den)*sqrt(d).
        Rational num, den;
        long radicand = 1;
        if (const auto* q = std::get_if<Rational>(&ratio->target)) {
            num = Rational(q->get_num());
            den = Rational(q->get_den());
        } else {
            const auto& s = std::get<SurdTarget>(ratio->target);
            num = Rational(s.scale.get_num());
            den = Rational(s.scale.get_den());
            radicand = s.radicand;
        }
        if (exactmath::sign(num) == 0) throw QueryError("ratio target must be nonzero");
        return a * a * (den * den) - b * b * (num * num * Rational(radicand));
    }
    const auto& eq = std::get<LengthEq>(condition);
    MultiPoly a = model.value_expr(eq.len_a);
    MultiPoly b = model.value_expr(eq.len_b);
    if (!model.length_var(eq.len_a) || !model.length_var(eq.len_b))
        throw QueryError("length equality conditions require segment length labels");
    return a * a - b * b;
}

// Double-precision univariate roots of g(x0, y) over [lo, hi] by sign
// scanning plus bisection; good enough for sample emission.
std::vector<double> section_roots(const MultiPoly& g, double x0, double lo, double hi,
                                  bool in_x) {
    const int kScan = 256;
    auto eval = [&](double t) {
        return in_x ? g.eval({t, x0}) : g.eval({x0, t});
    };
    std::vector<double> roots;
    double prev = eval(lo);
    for (int i = 1; i <= kScan; ++i) {
        double t = lo + (hi - lo) * i / kScan;
        double cur = eval(t);
        if (prev == 0.0) roots.push_back(lo + (hi - lo) * (i - 1) / kScan);
        if ((prev < 0) != (cur < 0) && prev != 0.0 && cur != 0.0) {
            double a = lo + (hi - lo) * (i - 1) / kScan, b = t;
            double fa = prev;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                double fm = eval(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fa < 0) != (fm < 0))
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = cur;
    }
    return roots;
}

double normalized_residual(const MultiPoly& g, double x, double y) {
    double scale = exactmath::to_double(g.max_abs_coeff());
    if (scale <= 0) scale = 1;
    return std::abs(g.eval({x, y})) / scale;
}

} // namespace

LocusResult locus_equation(const ConstructionProgram& program, const LocusCondition& condition,
                           const std::string& traced, const LocusOptions& options) {
    program.validate();
    if (!program.defines(traced) ||
        program.defining_step(traced).kind != StepKind::FreePoint)
        throw QueryError("traced label '" + traced + "' is not a free point");

    CompileOptions copts;
    copts.pin = options.pin;
    copts.never_pin = traced;
    AlgebraicModel model = compile(program, copts);

    auto [tx, ty] = model.point_coords(traced);
    auto var_index = [](const MultiPoly& coord) -> std::size_t {
        auto used = coord.used_vars();
        if (used.size() != 1) throw QueryError("traced point is not free after compilation");
        return used[0];
    };
    std::size_t xv = var_index(tx);
    std::size_t yv = var_index(ty);

    std::vector<MultiPoly> system = model.constraints();
    system.push_back(condition_polynomial(model, condition).primitive_integer_form());

    LocusResult result;
    result.traced = traced;
    auto raw = exactmath::eliminate(system, std::set<std::size_t>{xv, yv}, options.gb,
                                    &result.stats);

    // Rebase generators into a two-variable ring: x = v0, y = v1.
    std::vector<std::optional<std::size_t>> mapping(model.var_count());
    mapping[xv] = 0;
    mapping[yv] = 1;
    for (const auto& g : raw)
        result.generators.push_back(g.remapped(mapping, 2).primitive_integer_form());

    bool inconsistent = false;
    for (const auto& g : result.generators)
        if (g.is_constant() && !g.is_zero()) inconsistent = true;

    if (result.generators.empty()) {
        result.dimension = DimensionHint::FullPlane;
        return result;
    }
    if (inconsistent) {
        result.dimension = DimensionHint::Empty;
        return result;
    }

    // Per-coordinate minimal polynomials via a second (cheap) elimination.
    auto coordinate_minimal = [&](std::size_t keep_var) -> std::optional<MultiPoly> {
        auto gens = exactmath::eliminate(result.generators, std::set<std::size_t>{keep_var},
                                         options.gb, nullptr);
        if (gens.empty()) return std::nullopt;
        std::vector<std::optional<std::size_t>> m(2);
        m[keep_var] = 0;
        MultiPoly uni = gens.front().remapped(m, 1);
        if (uni.is_constant()) return std::nullopt;
        return exactmath::squarefree_part(uni);
    };
    result.x_minimal = coordinate_minimal(0);
    result.y_minimal = coordinate_minimal(1);
    if (result.x_minimal) result.x_factors = exactmath::factor_univariate(*result.x_minimal);
    if (result.y_minimal) result.y_factors = exactmath::factor_univariate(*result.y_minimal);

    result.dimension = (result.x_minimal && result.y_minimal) ? DimensionHint::IsolatedPoints
                                                              : DimensionHint::Curve;

    // Sampling.
    const auto [x0, y0, x1, y1] = options.region;
    auto keep_point = [&](double x, double y) {
        for (const auto& g : result.generators)
            if (normalized_residual(g, x, y) > options.sample_tol) return false;
        return true;
    };
    auto add_sample = [&](double x, double y) {
        if (x < x0 - 1e-12 || x > x1 + 1e-12 || y < y0 - 1e-12 || y > y1 + 1e-12) return;
        if (keep_point(x, y)) result.samples.push_back({x, y});
    };

    bool uses_x = false, uses_y = false;
    for (const auto& g : result.generators) {
        if (g.degree_in(0) > 0) uses_x = true;
        if (g.degree_in(1) > 0) uses_y = true;
    }
    if (result.dimension == DimensionHint::IsolatedPoints) {
        auto xs = exactmath::real_roots_numeric(*result.x_minimal, 1e-12);
        auto ys = exactmath::real_roots_numeric(*result.y_minimal, 1e-12);
        for (double x : xs)
            for (double y : ys) add_sample(x, y);
    } else if (uses_x && !uses_y && result.x_minimal) {
        // Union of vertical lines; emit one representative per line.
        double y = (0 >= y0 && 0 <= y1) ? 0 : 0.5 * (y0 + y1);
        for (double x : exactmath::real_roots_numeric(*result.x_minimal, 1e-12)) add_sample(x, y);
    } else if (uses_y && !uses_x && result.y_minimal) {
        double x = (0 >= x0 && 0 <= x1) ? 0 : 0.5 * (x0 + x1);
        for (double y : exactmath::real_roots_numeric(*result.y_minimal, 1e-12)) add_sample(x, y);
    } else {
        const MultiPoly& g = result.generators.front();
        for (int i = 0; i <= options.grid; ++i) {
            double x = x0 + (x1 - x0) * i / options.grid;
            for (double y : section_roots(g, x, y0, y1, false)) add_sample(x, y);
        }
    }

    if (options.filter_with_hints && !result.samples.empty()) {
        MultiPoly cond = condition_polynomial(model, condition);
        double scale = exactmath::to_double(cond.max_abs_coeff());
        if (scale <= 0) scale = 1;
        std::vector<std::array<double, 2>> kept;
        for (const auto& s : result.samples) {
            construction::WitnessOptions wopts;
            wopts.seed = options.seed;
            wopts.pin = options.pin;
            wopts.never_pin = traced;
            wopts.fixed[traced] = s;
            wopts.max_attempts = 1;
            try {
                construction::Witness w = numeric_witness(program, wopts);
                auto assignment = model.assignment_from(w.points, w.values);
                if (std::abs(cond.eval(assignment)) / scale <= options.sample_tol)
                    kept.push_back(s);
            } catch (const DegeneracyError&) {
                kept.push_back(s); // cannot disprove a degenerate sample
            }
        }
        result.samples = std::move(kept);
    }

    std::sort(result.samples.begin(), result.samples.end());
    return result;
}

std::vector<std::array<double, 2>> intersect_loci_numeric(const LocusResult& a,
                                                          const LocusResult& b,
                                                          std::array<double, 4> region,
                                                          double tol) {
    if (a.generators.empty() || b.generators.empty())
        throw QueryError("cannot intersect a locus with no generators");
    auto primary = [](const LocusResult& r) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < r.generators.size(); ++i)
            if (r.generators[i].total_degree() < r.generators[best].total_degree()) best = i;
        return r.generators[best];
    };
    MultiPoly f = primary(a);
    MultiPoly g = primary(b);
    MultiPoly fx = f.derivative(0), fy = f.derivative(1);
    MultiPoly gx = g.derivative(0), gy = g.derivative(1);

    const auto [x0, y0, x1, y1] = region;
    const int kGrid = 64;
    const int kNewtonCap = 50;
    std::vector<std::array<double, 2>> found;
    std::size_t singular_seeds = 0, total_seeds = 0;

    for (int i = 0; i <= kGrid; ++i) {
        for (int j = 0; j <= kGrid; ++j) {
            ++total_seeds;
            double x = x0 + (x1 - x0) * i / kGrid;
            double y = y0 + (y1 - y0) * j / kGrid;
            bool singular = false, converged = false;
            for (int it = 0; it < kNewtonCap; ++it) {
                double fv = f.eval({x, y});
                double gv = g.eval({x, y});
                double a11 = fx.eval({x, y}), a12 = fy.eval({x, y});
                double a21 = gx.eval({x, y}), a22 = gy.eval({x, y});
                double det = a11 * a22 - a12 * a21;
                if (std::abs(det) < 1e-14) {
                    singular = true;
                    break;
                }
                double dx = (fv * a22 - gv * a12) / det;
                double dy = (gv * a11 - fv * a21) / det;
                x -= dx;
                y -= dy;
                if (!std::isfinite(x) || !std::isfinite(y)) break;
                if (std::abs(dx) + std::abs(dy) < tol * 1e-3) {
                    converged = true;
                    break;
                }
            }
            if (singular) ++singular_seeds;
            if (!converged) continue;
            if (x < x0 - tol || x > x1 + tol || y < y0 - tol || y > y1 + tol) continue;
            double rf = normalized_residual(f, x, y);
            double rg = normalized_residual(g, x, y);
            if (rf > tol || rg > tol) continue;
            // Verify against every generator of both loci.
            bool ok = true;
            for (const auto& h : a.generators)
                if (normalized_residual(h, x, y) > tol) ok = false;
            for (const auto& h : b.generators)
                if (normalized_residual(h, x, y) > tol) ok = false;
            if (!ok) continue;
            bool duplicate = false;
            for (const auto& p : found)
                if (std::abs(p[0] - x) < 10 * tol && std::abs(p[1] - y) < 10 * tol)
                    duplicate = true;
            if (!duplicate) found.push_back({x, y});
        }
    }
    if (found.empty() && singular_seeds == total_seeds)
        throw QueryError("no isolated intersection found: Jacobian singular at every seed");
    std::sort(found.begin(), found.end());
    return found;
}

double evaluate_conjecture_length(const ConstructionProgram& program, const std::string& traced,
                                  std::array<double, 2> point, const std::string& length_label,
                                  const LocusOptions& options) {
    construction::WitnessOptions wopts;
    wopts.seed = options.seed;
    wopts.pin = options.pin;
    wopts.never_pin = traced;
    wopts.fixed[traced] = point;
    construction::Witness w = numeric_witness(program, wopts);
    auto it = w.values.find(length_label);
    if (it == w.values.end())
        throw QueryError("no length or number named '" + length_label + "'");
    return it->second;
}

} // namespace geoelim::locus
