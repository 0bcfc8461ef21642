#include "geoelim/witness.hpp"

#include "geoelim/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace geoelim::construction {

namespace {

constexpr double kDegenerateEps = 1e-12;

struct Vec2 {
    double x = 0, y = 0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

struct NLine {
    Vec2 p, d;
};
struct NCircle {
    Vec2 c;
    double r2 = 0;
};

// Raised internally to trigger a resample with a fresh seed.
struct DegenerateSample {
    std::string step;
    std::string what;
};

struct Evaluator {
    const ConstructionProgram& program;
    const WitnessOptions& options;
    std::mt19937_64 rng;

    std::map<std::string, Vec2> points;
    std::map<std::string, NLine> lines;
    std::map<std::string, NCircle> circles;
    Witness witness;

    Vec2 point(const std::string& label) const { return points.at(label); }

    double random_rational() {
        // Rationals in [-10, 10] with denominator at most 100.
        std::uniform_int_distribution<int> num(-1000, 1000);
        std::uniform_int_distribution<int> den(1, 100);
        return static_cast<double>(num(rng)) / static_cast<double>(den(rng));
    }

    Vec2 pick_branch(const Step& step, Vec2 a, Vec2 b) {
        Vec2 hint{step.hint->x, step.hint->y};
        double da = norm(a - hint);
        double db = norm(b - hint);
        Vec2 chosen = da <= db ? a : b;
        witness.branch_distances[step.outputs[0]] = {std::min(da, db), std::max(da, db)};
        return chosen;
    }

    void run() {
        int pin_budget = options.pin == PinMode::TwoPoints ? 2
                         : options.pin == PinMode::FirstOnly ? 1
                                                             : 0;
        int pinned = 0;
        for (const auto& step : program.steps()) {
            switch (step.kind) {
            case StepKind::FreePoint: {
                const std::string& label = step.outputs[0];
                bool excluded = options.never_pin && *options.never_pin == label;
                Vec2 p;
                if (auto it = options.fixed.find(label); it != options.fixed.end()) {
                    p = {(*it).second[0], (*it).second[1]};
                    if (!excluded && pinned < pin_budget) ++pinned;
                } else if (!excluded && pinned < pin_budget) {
                    p = {static_cast<double>(pinned), 0.0};
                    ++pinned;
                } else if (step.hint) {
                    p = {step.hint->x, step.hint->y};
                } else {
                    p = {random_rational(), random_rational()};
                }
                points[label] = p;
                break;
            }
            case StepKind::Midpoint: {
                Vec2 p = point(step.inputs[0]), q = point(step.inputs[1]);
                points[step.outputs[0]] = 0.5 * (p + q);
                break;
            }
            case StepKind::ReflectPoint: {
                Vec2 p = point(step.inputs[0]), c = point(step.inputs[1]);
                points[step.outputs[0]] = 2.0 * c - p;
                break;
            }
            case StepKind::Dilate: {
                Vec2 p = point(step.inputs[0]), c = point(step.inputs[1]);
                double f = exactmath::to_double(*step.factor);
                points[step.outputs[0]] = c + f * (p - c);
                break;
            }
            case StepKind::Square: {
                Vec2 a = point(step.inputs[0]), p = point(step.inputs[1]);
                Vec2 side = perp(p - a);
                points[step.outputs[0]] = p + side;
                points[step.outputs[1]] = a + side;
                break;
            }
            case StepKind::LineTwoPoints: {
                Vec2 p = point(step.inputs[0]), q = point(step.inputs[1]);
                if (norm(q - p) < kDegenerateEps)
                    throw DegenerateSample{step.outputs[0], "line through coincident points"};
                lines[step.outputs[0]] = {p, q - p};
                break;
            }
            case StepKind::PerpendicularBisector: {
                Vec2 p = point(step.inputs[0]), q = point(step.inputs[1]);
                if (norm(q - p) < kDegenerateEps)
                    throw DegenerateSample{step.outputs[0],
                                           "perpendicular bisector of coincident points"};
                lines[step.outputs[0]] = {0.5 * (p + q), perp(q - p)};
                break;
            }
            case StepKind::PerpendicularThrough: {
                Vec2 p = point(step.inputs[0]);
                const NLine& l = lines.at(step.inputs[1]);
                lines[step.outputs[0]] = {p, perp(l.d)};
                break;
            }
            case StepKind::CircleCenterThrough: {
                Vec2 c = point(step.inputs[0]), t = point(step.inputs[1]);
                double r2 = dot(t - c, t - c);
                if (r2 < kDegenerateEps)
                    throw DegenerateSample{step.outputs[0], "circle with zero radius"};
                circles[step.outputs[0]] = {c, r2};
                break;
            }
            case StepKind::IntersectLineLine: {
                const NLine& l1 = lines.at(step.inputs[0]);
                const NLine& l2 = lines.at(step.inputs[1]);
                double det = cross(l1.d, l2.d);
                double scale = std::max(1.0, norm(l1.d) * norm(l2.d));
                if (std::abs(det) < kDegenerateEps * scale)
                    throw DegenerateSample{step.outputs[0], "parallel lines"};
                double t = cross(l2.p - l1.p, l2.d) / det;
                points[step.outputs[0]] = l1.p + t * l1.d;
                break;
            }
            case StepKind::IntersectLineCircle: {
                const NLine& l = lines.at(step.inputs[0]);
                const NCircle& c = circles.at(step.inputs[1]);
                double a = dot(l.d, l.d);
                double bq = 2.0 * dot(l.d, l.p - c.c);
                double cq = dot(l.p - c.c, l.p - c.c) - c.r2;
                double disc = bq * bq - 4.0 * a * cq;
                if (disc < -kDegenerateEps * a * c.r2)
                    throw DegenerateSample{step.outputs[0], "line misses circle"};
                disc = std::max(disc, 0.0);
                double s = std::sqrt(disc);
                double t1 = (-bq + s) / (2.0 * a);
                double t2 = (-bq - s) / (2.0 * a);
                points[step.outputs[0]] = pick_branch(step, l.p + t1 * l.d, l.p + t2 * l.d);
                break;
            }
            case StepKind::IntersectCircleCircle: {
                const NCircle& c1 = circles.at(step.inputs[0]);
                const NCircle& c2 = circles.at(step.inputs[1]);
                Vec2 d = c2.c - c1.c;
                double dist2 = dot(d, d);
                if (dist2 < kDegenerateEps)
                    throw DegenerateSample{step.outputs[0], "concentric circles"};
                double dist = std::sqrt(dist2);
                double a = (dist2 + c1.r2 - c2.r2) / (2.0 * dist);
                double h2 = c1.r2 - a * a;
                if (h2 < -kDegenerateEps * std::max(c1.r2, c2.r2))
                    throw DegenerateSample{step.outputs[0], "circles do not meet"};
                h2 = std::max(h2, 0.0);
                double h = std::sqrt(h2);
                Vec2 dir = (1.0 / dist) * d;
                Vec2 mid = c1.c + a * dir;
                points[step.outputs[0]] =
                    pick_branch(step, mid + h * perp(dir), mid - h * perp(dir));
                break;
            }
            case StepKind::ReflectAboutLine: {
                Vec2 p = point(step.inputs[0]);
                const NLine& l = lines.at(step.inputs[1]);
                Vec2 v = p - l.p;
                double d2 = dot(l.d, l.d);
                if (d2 < kDegenerateEps)
                    throw DegenerateSample{step.outputs[0], "reflection about a degenerate line"};
                Vec2 proj = (dot(v, l.d) / d2) * l.d;
                points[step.outputs[0]] = l.p + 2.0 * proj - v;
                break;
            }
            case StepKind::EquilateralVertex: {
                Vec2 a = point(step.inputs[0]), b = point(step.inputs[1]);
                if (norm(b - a) < kDegenerateEps)
                    throw DegenerateSample{step.outputs[0],
                                           "equilateral vertex over a degenerate side"};
                Vec2 mid = 0.5 * (a + b);
                Vec2 up = (std::sqrt(3.0) / 2.0) * perp(b - a);
                points[step.outputs[0]] = pick_branch(step, mid + up, mid - up);
                break;
            }
            case StepKind::SegmentLength: {
                Vec2 p = point(step.inputs[0]), q = point(step.inputs[1]);
                witness.values[step.outputs[0]] = norm(p - q);
                break;
            }
            case StepKind::NumExpr: {
                double acc = exactmath::to_double(step.expr->constant);
                for (const auto& [coef, ref] : step.expr->terms)
                    acc += exactmath::to_double(coef) * witness.values.at(ref);
                witness.values[step.outputs[0]] = acc;
                break;
            }
            }
        }
        for (const auto& [label, p] : points) witness.points[label] = {p.x, p.y};
    }
};

} // namespace

Witness numeric_witness(const ConstructionProgram& program, const WitnessOptions& options) {
    program.validate();
    std::string last_step, last_reason;
    for (int attempt = 0; attempt < std::max(1, options.max_attempts); ++attempt) {
        unsigned seed = options.seed + 0x9e3779b9u * static_cast<unsigned>(attempt);
        Evaluator ev{program, options, std::mt19937_64(seed), {}, {}, {}, {}};
        ev.witness.seed = options.seed;
        try {
            ev.run();
            return std::move(ev.witness);
        } catch (const DegenerateSample& d) {
            last_step = d.step;
            last_reason = d.what;
        }
    }
    throw DegeneracyError("degenerate construction sample at step '" + last_step +
                          "': " + last_reason);
}

Witness numeric_witness(const ConstructionProgram& program, unsigned seed, double tol) {
    WitnessOptions opts;
    opts.seed = seed;
    opts.tol = tol;
    return numeric_witness(program, opts);
}

double max_constraint_residual(const AlgebraicModel& model, const Witness& witness) {
    std::vector<double> assignment = model.assignment_from(witness.points, witness.values);
    double worst = 0;
    for (const auto& c : model.constraints()) {
        double scale = exactmath::to_double(c.max_abs_coeff());
        if (scale <= 0) scale = 1;
        worst = std::max(worst, std::abs(c.eval(assignment)) / scale);
    }
    return worst;
}

} // namespace geoelim::construction
