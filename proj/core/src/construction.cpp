#include "geoelim/construction.hpp"

#include "geoelim/errors.hpp"

#include <algorithm>
#include <map>

namespace geoelim::construction {

namespace {

ObjectKind output_kind(StepKind kind) {
    switch (kind) {
    case StepKind::LineTwoPoints:
    case StepKind::PerpendicularBisector:
    case StepKind::PerpendicularThrough:
        return ObjectKind::Line;
    case StepKind::CircleCenterThrough:
        return ObjectKind::Circle;
    case StepKind::SegmentLength:
    case StepKind::NumExpr:
        return ObjectKind::Value;
    default:
        return ObjectKind::Point;
    }
}

struct Signature {
    std::size_t arity;
    std::vector<ObjectKind> input_kinds;
    std::size_t outputs;
};

Signature signature(StepKind kind) {
    using K = ObjectKind;
    switch (kind) {
    case StepKind::FreePoint: return {0, {}, 1};
    case StepKind::Midpoint: return {2, {K::Point, K::Point}, 1};
    case StepKind::ReflectPoint: return {2, {K::Point, K::Point}, 1};
    case StepKind::ReflectAboutLine: return {2, {K::Point, K::Line}, 1};
    case StepKind::Dilate: return {2, {K::Point, K::Point}, 1};
    case StepKind::LineTwoPoints: return {2, {K::Point, K::Point}, 1};
    case StepKind::PerpendicularBisector: return {2, {K::Point, K::Point}, 1};
    case StepKind::PerpendicularThrough: return {2, {K::Point, K::Line}, 1};
    case StepKind::CircleCenterThrough: return {2, {K::Point, K::Point}, 1};
    case StepKind::IntersectLineLine: return {2, {K::Line, K::Line}, 1};
    case StepKind::IntersectLineCircle: return {2, {K::Line, K::Circle}, 1};
    case StepKind::IntersectCircleCircle: return {2, {K::Circle, K::Circle}, 1};
    case StepKind::Square: return {2, {K::Point, K::Point}, 2};
    case StepKind::EquilateralVertex: return {2, {K::Point, K::Point}, 1};
    case StepKind::SegmentLength: return {2, {K::Point, K::Point}, 1};
    case StepKind::NumExpr: return {0, {}, 1};
    }
    return {0, {}, 1};
}

} // namespace

bool requires_branch_hint(StepKind kind) {
    return kind == StepKind::IntersectLineCircle || kind == StepKind::IntersectCircleCircle ||
           kind == StepKind::EquilateralVertex;
}

void ConstructionProgram::append(Step step) { steps_.push_back(std::move(step)); }

bool ConstructionProgram::defines(const std::string& label) const {
    for (const auto& s : steps_)
        for (const auto& out : s.outputs)
            if (out == label) return true;
    return false;
}

ObjectKind ConstructionProgram::kind_of(const std::string& label) const {
    for (const auto& s : steps_)
        for (const auto& out : s.outputs)
            if (out == label) return output_kind(s.kind);
    throw CompileError("undefined label '" + label + "'");
}

const Step& ConstructionProgram::defining_step(const std::string& label) const {
    for (const auto& s : steps_)
        for (const auto& out : s.outputs)
            if (out == label) return s;
    throw CompileError("undefined label '" + label + "'");
}

std::vector<std::string> ConstructionProgram::free_points() const {
    std::vector<std::string> out;
    for (const auto& s : steps_)
        if (s.kind == StepKind::FreePoint) out.push_back(s.outputs[0]);
    return out;
}

void ConstructionProgram::validate() const {
    std::map<std::string, ObjectKind> defined;
    bool seen_free_point = false;
    for (const auto& s : steps_) {
        Signature sig = signature(s.kind);
        if (s.outputs.size() != sig.outputs)
            throw CompileError("step produces " + std::to_string(s.outputs.size()) +
                               " labels where " + std::to_string(sig.outputs) + " expected");
        if (s.inputs.size() != sig.arity)
            throw CompileError("step takes " + std::to_string(sig.arity) + " arguments, got " +
                               std::to_string(s.inputs.size()));
        if (s.kind != StepKind::FreePoint && !seen_free_point)
            throw CompileError("derived object before any free point");
        for (std::size_t i = 0; i < s.inputs.size(); ++i) {
            auto it = defined.find(s.inputs[i]);
            if (it == defined.end())
                throw CompileError("undefined label '" + s.inputs[i] + "'");
            if (it->second != sig.input_kinds[i])
                throw CompileError("label '" + s.inputs[i] + "' has the wrong kind here");
        }
        if (s.kind == StepKind::Dilate) {
            if (!s.factor) throw CompileError("dilation without a factor");
        }
        if (s.kind == StepKind::NumExpr) {
            if (!s.expr) throw CompileError("number step without an expression");
            for (const auto& [coef, label] : s.expr->terms) {
                auto it = defined.find(label);
                if (it == defined.end()) throw CompileError("undefined label '" + label + "'");
                if (it->second != ObjectKind::Value)
                    throw CompileError("number expression references non-value label '" + label +
                                       "'");
            }
        }
        if (requires_branch_hint(s.kind) && !s.hint)
            throw CompileError("step defining '" + s.outputs[0] +
                               "' resolves a two-valued choice and needs a hint");
        for (const auto& out : s.outputs) {
            if (defined.count(out)) throw CompileError("duplicate label '" + out + "'");
            defined.emplace(out, output_kind(s.kind));
        }
        if (s.kind == StepKind::FreePoint) seen_free_point = true;
    }
}

void ConstructionProgram::add_free_point(const std::string& label, std::optional<Hint> hint) {
    append({StepKind::FreePoint, {label}, {}, {}, hint, {}});
}
void ConstructionProgram::add_midpoint(const std::string& label, const std::string& p,
                                       const std::string& q) {
    append({StepKind::Midpoint, {label}, {p, q}, {}, {}, {}});
}
void ConstructionProgram::add_reflect_point(const std::string& label, const std::string& p,
                                            const std::string& center) {
    append({StepKind::ReflectPoint, {label}, {p, center}, {}, {}, {}});
}
void ConstructionProgram::add_reflect_about_line(const std::string& label, const std::string& p,
                                                 const std::string& line) {
    append({StepKind::ReflectAboutLine, {label}, {p, line}, {}, {}, {}});
}
void ConstructionProgram::add_dilate(const std::string& label, const std::string& p,
                                     const Rational& factor, const std::string& center) {
    append({StepKind::Dilate, {label}, {p, center}, factor, {}, {}});
}
void ConstructionProgram::add_line(const std::string& label, const std::string& p,
                                   const std::string& q) {
    append({StepKind::LineTwoPoints, {label}, {p, q}, {}, {}, {}});
}
void ConstructionProgram::add_perpendicular_bisector(const std::string& label,
                                                     const std::string& p, const std::string& q) {
    append({StepKind::PerpendicularBisector, {label}, {p, q}, {}, {}, {}});
}
void ConstructionProgram::add_perpendicular_through(const std::string& label,
                                                    const std::string& p,
                                                    const std::string& line) {
    append({StepKind::PerpendicularThrough, {label}, {p, line}, {}, {}, {}});
}
void ConstructionProgram::add_circle(const std::string& label, const std::string& center,
                                     const std::string& through) {
    append({StepKind::CircleCenterThrough, {label}, {center, through}, {}, {}, {}});
}
void ConstructionProgram::add_intersect(const std::string& label, const std::string& a,
                                        const std::string& b, std::optional<Hint> hint) {
    ObjectKind ka = kind_of(a);
    ObjectKind kb = kind_of(b);
    StepKind kind;
    std::string first = a, second = b;
    if (ka == ObjectKind::Line && kb == ObjectKind::Line) {
        kind = StepKind::IntersectLineLine;
    } else if (ka == ObjectKind::Line && kb == ObjectKind::Circle) {
        kind = StepKind::IntersectLineCircle;
    } else if (ka == ObjectKind::Circle && kb == ObjectKind::Line) {
        kind = StepKind::IntersectLineCircle;
        std::swap(first, second);
    } else if (ka == ObjectKind::Circle && kb == ObjectKind::Circle) {
        kind = StepKind::IntersectCircleCircle;
    } else {
        throw CompileError("intersection arguments must be lines or circles");
    }
    append({kind, {label}, {first, second}, {}, hint, {}});
}
void ConstructionProgram::add_square(const std::string& out1, const std::string& out2,
                                     const std::string& a, const std::string& b) {
    append({StepKind::Square, {out1, out2}, {a, b}, {}, {}, {}});
}
void ConstructionProgram::add_equilateral_vertex(const std::string& label, const std::string& a,
                                                 const std::string& b, Hint hint) {
    append({StepKind::EquilateralVertex, {label}, {a, b}, {}, hint, {}});
}
void ConstructionProgram::add_segment_length(const std::string& label, const std::string& p,
                                             const std::string& q) {
    append({StepKind::SegmentLength, {label}, {p, q}, {}, {}, {}});
}
void ConstructionProgram::add_num_expr(const std::string& label, LinearCombo expr) {
    append({StepKind::NumExpr, {label}, {}, {}, {}, std::move(expr)});
}

} // namespace geoelim::construction
