#pragma once

#include "geoelim/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geoelim::construction {

using exactmath::Rational;

/// Approximate coordinates used only to pick intersection branches and to
/// seed free points; hints never enter symbolic computation.
struct Hint {
    double x = 0;
    double y = 0;
    bool operator==(const Hint&) const = default;
};

enum class StepKind {
    FreePoint,
    Midpoint,
    ReflectPoint,      // mirror a point at a point
    ReflectAboutLine,  // mirror a point at a line
    Dilate,
    LineTwoPoints,
    PerpendicularBisector,
    PerpendicularThrough, // line through a point, perpendicular to a line
    CircleCenterThrough,
    IntersectLineLine,
    IntersectLineCircle,
    IntersectCircleCircle,
    Square,            // two new vertices completing a counterclockwise square
    EquilateralVertex, // third vertex of an equilateral triangle
    SegmentLength,
    NumExpr,
};

enum class ObjectKind { Point, Line, Circle, Value };

/// Rational-linear combination of value labels plus a constant.
struct LinearCombo {
    std::vector<std::pair<Rational, std::string>> terms;
    Rational constant = Rational(0);
    bool operator==(const LinearCombo&) const = default;
};

struct Step {
    StepKind kind;
    std::vector<std::string> outputs; // one label, or two for Square
    std::vector<std::string> inputs;  // labels of earlier objects
    std::optional<Rational> factor;   // Dilate only, an exact rational
    std::optional<Hint> hint;         // free-point position or branch choice
    std::optional<LinearCombo> expr;  // NumExpr only

    bool operator==(const Step&) const = default;
};

/// True for steps that resolve a two-valued (quadratic) choice and therefore
/// must carry a branch hint.
bool requires_branch_hint(StepKind kind);

/// An ordered, acyclic construction: every step references only labels
/// defined by earlier steps.
class ConstructionProgram {
public:
    void append(Step step);
    const std::vector<Step>& steps() const { return steps_; }
    bool empty() const { return steps_.empty(); }

    /// Full validation: unique labels, defined-before-use, kind agreement,
    /// hints on branch steps, a free point before any derived object.
    void validate() const;

    bool defines(const std::string& label) const;
    ObjectKind kind_of(const std::string& label) const; // throws on unknown label
    const Step& defining_step(const std::string& label) const;
    std::vector<std::string> free_points() const;

    bool operator==(const ConstructionProgram& o) const { return steps_ == o.steps_; }

    // Convenience builders, mostly for tests.
    void add_free_point(const std::string& label, std::optional<Hint> hint = {});
    void add_midpoint(const std::string& label, const std::string& p, const std::string& q);
    void add_reflect_point(const std::string& label, const std::string& p, const std::string& center);
    void add_reflect_about_line(const std::string& label, const std::string& p, const std::string& line);
    void add_dilate(const std::string& label, const std::string& p, const Rational& factor,
                    const std::string& center);
    void add_line(const std::string& label, const std::string& p, const std::string& q);
    void add_perpendicular_bisector(const std::string& label, const std::string& p,
                                    const std::string& q);
    void add_perpendicular_through(const std::string& label, const std::string& p,
                                   const std::string& line);
    void add_circle(const std::string& label, const std::string& center, const std::string& through);
    void add_intersect(const std::string& label, const std::string& a, const std::string& b,
                       std::optional<Hint> hint = {});
    void add_square(const std::string& out1, const std::string& out2, const std::string& a,
                    const std::string& b);
    void add_equilateral_vertex(const std::string& label, const std::string& a,
                                const std::string& b, Hint hint);
    void add_segment_length(const std::string& label, const std::string& p, const std::string& q);
    void add_num_expr(const std::string& label, LinearCombo expr);

private:
    std::vector<Step> steps_;
};

} // namespace geoelim::construction
