#include "geoelim/model.hpp"

#include "geoelim/errors.hpp"

#include <algorithm>
#include <array>

namespace geoelim::construction {

using exactmath::Exponents;
using exactmath::Rational;
using exactmath::sign;

namespace {

using Coords = std::pair<MultiPoly, MultiPoly>;

struct LineCarrier {
    enum class Kind { TwoPoints, PerpBisector, PerpThrough } kind;
    std::string a; // point
    std::string b; // point (TwoPoints, PerpBisector) or line label (PerpThrough)
};

struct CircleCarrier {
    std::string center;
    std::string through;
};

Coords perp(const Coords& v) { return {-v.second, v.first}; }

Coords sub(const Coords& a, const Coords& b) {
    return {a.first - b.first, a.second - b.second};
}

MultiPoly dot(const Coords& a, const Coords& b) {
    return a.first * b.first + a.second * b.second;
}

MultiPoly cross(const Coords& a, const Coords& b) {
    return a.first * b.second - a.second * b.first;
}

} // namespace

struct ModelBuilder {
    const ConstructionProgram& program;
    const CompileOptions& options;
    std::size_t nvars = 0;

    AlgebraicModel model;
    std::map<std::string, LineCarrier> lines;
    std::map<std::string, CircleCarrier> circles;

    MultiPoly constant(const Rational& c) const { return MultiPoly::constant(nvars, c); }
    MultiPoly var(std::size_t idx) const { return MultiPoly::variable(nvars, idx); }

    const Coords& coords(const std::string& label) { return model.point_coords(label); }

    MultiPoly squared_distance(const std::string& p, const std::string& q) {
        Coords d = sub(coords(p), coords(q));
        return dot(d, d);
    }

    // Direction vector of a line as polynomials.
    Coords direction(const std::string& line_label) {
        const LineCarrier& l = lines.at(line_label);
        switch (l.kind) {
        case LineCarrier::Kind::TwoPoints:
            return sub(coords(l.b), coords(l.a));
        case LineCarrier::Kind::PerpBisector:
            return perp(sub(coords(l.b), coords(l.a)));
        case LineCarrier::Kind::PerpThrough:
            return perp(direction(l.b));
        }
        throw CompileError("unreachable line kind");
    }

    // Membership polynomial: zero exactly when X lies on the line.
    MultiPoly on_line(const Coords& x, const std::string& line_label) {
        const LineCarrier& l = lines.at(line_label);
        switch (l.kind) {
        case LineCarrier::Kind::TwoPoints: {
            // three-point collinearity determinant
            Coords a = coords(l.a);
            return cross(sub(coords(l.b), a), sub(x, a));
        }
        case LineCarrier::Kind::PerpBisector: {
            Coords da = sub(x, coords(l.a));
            Coords db = sub(x, coords(l.b));
            return dot(da, da) - dot(db, db);
        }
        case LineCarrier::Kind::PerpThrough:
            return dot(sub(x, coords(l.a)), direction(l.b));
        }
        throw CompileError("unreachable line kind");
    }

    MultiPoly on_circle(const Coords& x, const std::string& circle_label) {
        const CircleCarrier& c = circles.at(circle_label);
        Coords dx = sub(x, coords(c.center));
        Coords dr = sub(coords(c.through), coords(c.center));
        return dot(dx, dx) - dot(dr, dr);
    }

    void add_constraint(MultiPoly p) {
        p = p.primitive_integer_form();
        if (p.is_zero()) return;
        if (p.is_constant())
            throw CompileError("contradictory constraint: construction is degenerate");
        model.constraints_.push_back(std::move(p));
    }
};

namespace {

// Count the variables the model will need so every polynomial can live in a
// fixed ring from the start.
std::size_t count_variables(const ConstructionProgram& program, const CompileOptions& options) {
    std::size_t n = 0;
    int free_seen = 0;
    int pin_budget = options.pin == PinMode::TwoPoints ? 2
                     : options.pin == PinMode::FirstOnly ? 1
                                                         : 0;
    for (const auto& s : program.steps()) {
        switch (s.kind) {
        case StepKind::FreePoint: {
            bool excluded = options.never_pin && *options.never_pin == s.outputs[0];
            if (!excluded && free_seen < pin_budget) {
                ++free_seen;
            } else {
                n += 2;
            }
            break;
        }
        case StepKind::IntersectLineLine:
        case StepKind::IntersectLineCircle:
        case StepKind::IntersectCircleCircle:
        case StepKind::ReflectAboutLine:
        case StepKind::EquilateralVertex:
            n += 2;
            break;
        case StepKind::SegmentLength:
            n += 1;
            break;
        default:
            break;
        }
    }
    return n;
}

} // namespace

bool PinRecord::pinned(const std::string& label) const {
    for (const auto& [l, c] : pins)
        if (l == label) return true;
    return false;
}

const std::pair<MultiPoly, MultiPoly>& AlgebraicModel::point_coords(
    const std::string& label) const {
    auto it = points_.find(label);
    if (it == points_.end()) throw CompileError("no point named '" + label + "'");
    return it->second;
}

bool AlgebraicModel::has_value(const std::string& label) const {
    return lengths_.count(label) > 0 || numbers_.count(label) > 0;
}

MultiPoly AlgebraicModel::value_expr(const std::string& label) const {
    if (auto it = lengths_.find(label); it != lengths_.end())
        return MultiPoly::variable(vars_.size(), it->second);
    if (auto it = numbers_.find(label); it != numbers_.end()) return it->second;
    throw CompileError("no length or number named '" + label + "'");
}

std::optional<std::size_t> AlgebraicModel::length_var(const std::string& label) const {
    if (auto it = lengths_.find(label); it != lengths_.end()) return it->second;
    return std::nullopt;
}

std::vector<std::string> AlgebraicModel::length_labels() const {
    std::vector<std::string> out;
    for (const auto& [label, idx] : lengths_) out.push_back(label);
    return out;
}

std::size_t AlgebraicModel::add_variable(VarRole role, const std::string& source) {
    std::size_t idx = vars_.size();
    vars_.push_back({"v" + std::to_string(idx), role, source});
    std::size_t n = vars_.size();
    for (auto& c : constraints_) c = c.extended(n);
    for (auto& [label, coords] : points_) {
        coords.first = coords.first.extended(n);
        coords.second = coords.second.extended(n);
    }
    for (auto& [label, expr] : numbers_) expr = expr.extended(n);
    return idx;
}

void AlgebraicModel::add_constraint(MultiPoly c) {
    if (c.var_count() != vars_.size())
        throw StructuralError("constraint lives in the wrong ring");
    constraints_.push_back(std::move(c));
}

std::vector<double> AlgebraicModel::assignment_from(
    const std::map<std::string, std::array<double, 2>>& points,
    const std::map<std::string, double>& values) const {
    std::vector<double> out(vars_.size(), 0.0);
    for (const auto& [label, coords] : points_) {
        auto it = points.find(label);
        if (it == points.end()) continue;
        // Implicit coordinates are plain variable monomials.
        auto assign = [&](const MultiPoly& expr, double value) {
            if (expr.term_count() == 1 && expr.terms()[0].coeff == 1 &&
                exactmath::exp_total_degree(expr.terms()[0].exps) == 1) {
                auto vars = expr.used_vars();
                out[vars[0]] = value;
            }
        };
        assign(coords.first, it->second[0]);
        assign(coords.second, it->second[1]);
    }
    for (const auto& [label, idx] : lengths_) {
        auto it = values.find(label);
        if (it != values.end()) out[idx] = it->second;
    }
    return out;
}

std::vector<std::string> AlgebraicModel::variable_names() const {
    std::vector<std::string> names;
    names.reserve(vars_.size());
    for (const auto& v : vars_) names.push_back(v.name);
    return names;
}

AlgebraicModel compile(const ConstructionProgram& program, const CompileOptions& options) {
    program.validate();

    ModelBuilder b{program, options, 0, {}, {}, {}};
    b.nvars = count_variables(program, options);

    int pin_budget = options.pin == PinMode::TwoPoints ? 2
                     : options.pin == PinMode::FirstOnly ? 1
                                                         : 0;
    int pinned_count = 0;
    std::size_t next_var = 0;

    auto alloc_var = [&](VarRole role, const std::string& source) {
        b.model.vars_.push_back({"", role, source});
        return next_var++;
    };

    for (const auto& step : program.steps()) {
        switch (step.kind) {
        case StepKind::FreePoint: {
            const std::string& label = step.outputs[0];
            bool excluded = options.never_pin && *options.never_pin == label;
            if (!excluded && pinned_count < pin_budget) {
                Rational x(pinned_count), y(0);
                b.model.points_.emplace(label, Coords{b.constant(x), b.constant(y)});
                b.model.pinned_.pins.push_back({label, {x, y}});
                ++pinned_count;
            } else {
                std::size_t vx = alloc_var(VarRole::BaseCoord, label + ".x");
                std::size_t vy = alloc_var(VarRole::BaseCoord, label + ".y");
                b.model.points_.emplace(label, Coords{b.var(vx), b.var(vy)});
            }
            break;
        }
        case StepKind::Midpoint: {
            Coords p = b.coords(step.inputs[0]);
            Coords q = b.coords(step.inputs[1]);
            Rational half = exactmath::make_rational(1, 2);
            b.model.points_.emplace(step.outputs[0], Coords{(p.first + q.first) * half,
                                                            (p.second + q.second) * half});
            break;
        }
        case StepKind::ReflectPoint: {
            Coords p = b.coords(step.inputs[0]);
            Coords c = b.coords(step.inputs[1]);
            Rational two(2);
            b.model.points_.emplace(step.outputs[0],
                                    Coords{c.first * two - p.first, c.second * two - p.second});
            break;
        }
        case StepKind::Dilate: {
            Coords p = b.coords(step.inputs[0]);
            Coords c = b.coords(step.inputs[1]);
            const Rational& f = *step.factor;
            b.model.points_.emplace(step.outputs[0],
                                    Coords{c.first + (p.first - c.first) * f,
                                           c.second + (p.second - c.second) * f});
            break;
        }
        case StepKind::Square: {
            // Counterclockwise: first new vertex follows the second input.
            Coords a = b.coords(step.inputs[0]);
            Coords p = b.coords(step.inputs[1]);
            Coords side = perp(sub(p, a));
            b.model.points_.emplace(step.outputs[0],
                                    Coords{p.first + side.first, p.second + side.second});
            b.model.points_.emplace(step.outputs[1],
                                    Coords{a.first + side.first, a.second + side.second});
            break;
        }
        case StepKind::LineTwoPoints:
            b.lines.emplace(step.outputs[0], LineCarrier{LineCarrier::Kind::TwoPoints,
                                                         step.inputs[0], step.inputs[1]});
            break;
        case StepKind::PerpendicularBisector:
            b.lines.emplace(step.outputs[0], LineCarrier{LineCarrier::Kind::PerpBisector,
                                                         step.inputs[0], step.inputs[1]});
            break;
        case StepKind::PerpendicularThrough:
            b.lines.emplace(step.outputs[0], LineCarrier{LineCarrier::Kind::PerpThrough,
                                                         step.inputs[0], step.inputs[1]});
            break;
        case StepKind::CircleCenterThrough:
            b.circles.emplace(step.outputs[0], CircleCarrier{step.inputs[0], step.inputs[1]});
            break;
        case StepKind::IntersectLineLine: {
            const std::string& label = step.outputs[0];
            std::size_t vx = alloc_var(VarRole::ImplicitCoord, label + ".x");
            std::size_t vy = alloc_var(VarRole::ImplicitCoord, label + ".y");
            b.model.implicit_points_.push_back(label);
            Coords x{b.var(vx), b.var(vy)};
            b.model.points_.emplace(label, x);
            b.add_constraint(b.on_line(x, step.inputs[0]));
            b.add_constraint(b.on_line(x, step.inputs[1]));
            break;
        }
        case StepKind::IntersectLineCircle: {
            const std::string& label = step.outputs[0];
            std::size_t vx = alloc_var(VarRole::ImplicitCoord, label + ".x");
            std::size_t vy = alloc_var(VarRole::ImplicitCoord, label + ".y");
            b.model.implicit_points_.push_back(label);
            Coords x{b.var(vx), b.var(vy)};
            b.model.points_.emplace(label, x);
            b.add_constraint(b.on_line(x, step.inputs[0]));
            b.add_constraint(b.on_circle(x, step.inputs[1]));
            break;
        }
        case StepKind::IntersectCircleCircle: {
            const std::string& label = step.outputs[0];
            std::size_t vx = alloc_var(VarRole::ImplicitCoord, label + ".x");
            std::size_t vy = alloc_var(VarRole::ImplicitCoord, label + ".y");
            b.model.implicit_points_.push_back(label);
            Coords x{b.var(vx), b.var(vy)};
            b.model.points_.emplace(label, x);
            b.add_constraint(b.on_circle(x, step.inputs[0]));
            b.add_constraint(b.on_circle(x, step.inputs[1]));
            break;
        }
        case StepKind::ReflectAboutLine: {
            const std::string& label = step.outputs[0];
            std::size_t vx = alloc_var(VarRole::ImplicitCoord, label + ".x");
            std::size_t vy = alloc_var(VarRole::ImplicitCoord, label + ".y");
            b.model.implicit_points_.push_back(label);
            Coords image{b.var(vx), b.var(vy)};
            b.model.points_.emplace(label, image);
            Coords p = b.coords(step.inputs[0]);
            Rational half = exactmath::make_rational(1, 2);
            Coords mid{(p.first + image.first) * half, (p.second + image.second) * half};
            b.add_constraint(b.on_line(mid, step.inputs[1]));
            b.add_constraint(dot(sub(image, p), b.direction(step.inputs[1])));
            break;
        }
        case StepKind::EquilateralVertex: {
            const std::string& label = step.outputs[0];
            std::size_t vx = alloc_var(VarRole::ImplicitCoord, label + ".x");
            std::size_t vy = alloc_var(VarRole::ImplicitCoord, label + ".y");
            b.model.implicit_points_.push_back(label);
            Coords x{b.var(vx), b.var(vy)};
            b.model.points_.emplace(label, x);
            Coords a = b.coords(step.inputs[0]);
            Coords p = b.coords(step.inputs[1]);
            Coords ab = sub(p, a);
            MultiPoly side2 = dot(ab, ab);
            Coords xa = sub(x, a);
            Coords xb = sub(x, p);
            b.add_constraint(dot(xa, xa) - side2);
            b.add_constraint(dot(xb, xb) - side2);
            break;
        }
        case StepKind::SegmentLength: {
            const std::string& label = step.outputs[0];
            std::size_t v = alloc_var(VarRole::Length, "len(" + label + ")");
            b.model.lengths_.emplace(label, v);
            MultiPoly len = b.var(v);
            b.add_constraint(len * len - b.squared_distance(step.inputs[0], step.inputs[1]));
            break;
        }
        case StepKind::NumExpr: {
            MultiPoly acc = b.constant(step.expr->constant);
            for (const auto& [coef, ref] : step.expr->terms) {
                if (auto it = b.model.lengths_.find(ref); it != b.model.lengths_.end())
                    acc += b.var(it->second) * coef;
                else
                    acc += b.model.numbers_.at(ref) * coef;
            }
            b.model.numbers_.emplace(step.outputs[0], acc);
            break;
        }
        }
    }

    if (next_var != b.nvars)
        throw StructuralError("internal: variable pre-count disagrees with allocation");

    AlgebraicModel model = std::move(b.model);

    // Exact linear folding: an implicit coordinate with a defining constraint
    // a*v + rest = 0 (a a nonzero rational, rest free of v) can be replaced by
    // -rest/a everywhere without changing the solution set.
    if (options.fold_linear) {
        std::vector<bool> dead(model.vars_.size(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t ci = 0; ci < model.constraints_.size() && !changed; ++ci) {
                const MultiPoly& c = model.constraints_[ci];
                for (std::size_t v = 0; v < model.vars_.size(); ++v) {
                    if (dead[v] || model.vars_[v].role != VarRole::ImplicitCoord) continue;
                    if (c.degree_in(v) != 1) continue;
                    MultiPoly coeff(c.var_count());
                    MultiPoly rest(c.var_count());
                    for (const auto& t : c.terms()) {
                        if (t.exps[v] == 1) {
                            Exponents e = t.exps;
                            e[v] = 0;
                            coeff += MultiPoly::monomial(std::move(e), t.coeff);
                        } else {
                            rest += MultiPoly::monomial(t.exps, t.coeff);
                        }
                    }
                    if (!coeff.is_constant()) continue;
                    Rational a = coeff.constant_value();
                    if (sign(a) == 0) continue;
                    MultiPoly replacement = rest * (Rational(-1) / a);
                    for (std::size_t cj = 0; cj < model.constraints_.size(); ++cj) {
                        if (cj == ci) continue;
                        model.constraints_[cj] =
                            model.constraints_[cj].substituted(v, replacement);
                    }
                    for (auto& [label, coords] : model.points_) {
                        coords.first = coords.first.substituted(v, replacement);
                        coords.second = coords.second.substituted(v, replacement);
                    }
                    for (auto& [label, expr] : model.numbers_)
                        expr = expr.substituted(v, replacement);
                    model.constraints_.erase(model.constraints_.begin() +
                                             static_cast<std::ptrdiff_t>(ci));
                    dead[v] = true;
                    changed = true;
                    break;
                }
            }
        }
        // Re-normalize and drop vacuous constraints; a nonzero constant left
        // over means the construction is contradictory.
        std::vector<MultiPoly> kept;
        for (auto& c : model.constraints_) {
            MultiPoly p = c.primitive_integer_form();
            if (p.is_zero()) continue;
            if (p.is_constant())
                throw CompileError("contradictory constraints: construction is degenerate");
            kept.push_back(std::move(p));
        }
        model.constraints_ = std::move(kept);

        // Compact away folded variables.
        std::vector<std::optional<std::size_t>> mapping(model.vars_.size());
        std::vector<VariableInfo> new_vars;
        for (std::size_t v = 0; v < model.vars_.size(); ++v) {
            if (dead[v]) continue;
            mapping[v] = new_vars.size();
            new_vars.push_back(model.vars_[v]);
        }
        std::size_t n = new_vars.size();
        for (auto& c : model.constraints_) c = c.remapped(mapping, n);
        for (auto& [label, coords] : model.points_) {
            coords.first = coords.first.remapped(mapping, n);
            coords.second = coords.second.remapped(mapping, n);
        }
        for (auto& [label, expr] : model.numbers_) expr = expr.remapped(mapping, n);
        std::map<std::string, std::size_t> new_lengths;
        for (const auto& [label, idx] : model.lengths_) new_lengths[label] = *mapping[idx];
        model.lengths_ = std::move(new_lengths);
        model.vars_ = std::move(new_vars);
    }

    for (std::size_t v = 0; v < model.vars_.size(); ++v)
        model.vars_[v].name = "v" + std::to_string(v);
    return model;
}

} // namespace geoelim::construction
