#pragma once

#include "geoelim/construction.hpp"
#include "geoelim/multipoly.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace geoelim::construction {

using exactmath::MultiPoly;

enum class VarRole { BaseCoord, ImplicitCoord, Length, Query };

struct VariableInfo {
    std::string name;   // canonical v0, v1, ...
    VarRole role;
    std::string source; // "A.x", "len(s)", "ratio", ... for diagnostics
};

enum class PinMode { None, FirstOnly, TwoPoints };

struct CompileOptions {
    PinMode pin = PinMode::TwoPoints;
    /// Label excluded from pinning (a traced point); pinning moves on to the
    /// next free points.
    std::optional<std::string> never_pin;
    /// Solve and substitute implicit variables whose defining constraint is
    /// linear with a constant coefficient. Purely an exact simplification.
    bool fold_linear = true;
};

struct PinRecord {
    // label -> exact pinned coordinates
    std::vector<std::pair<std::string, std::pair<Rational, Rational>>> pins;
    bool pinned(const std::string& label) const;
};

/// The compiled polynomial model of a construction: a variable table, exact
/// coordinate expressions for every point, one squared-distance constraint
/// per length, and the implicit constraints introduced by intersections,
/// line reflections and equilateral vertices. Immutable once built apart
/// from explicit query extension.
class AlgebraicModel {
public:
    std::size_t var_count() const { return vars_.size(); }
    const std::vector<VariableInfo>& variables() const { return vars_; }
    const std::vector<MultiPoly>& constraints() const { return constraints_; }
    const PinRecord& pinned() const { return pinned_; }

    bool has_point(const std::string& label) const { return points_.count(label) > 0; }
    const std::pair<MultiPoly, MultiPoly>& point_coords(const std::string& label) const;
    /// Labels that introduced implicit coordinate variables, in step order.
    const std::vector<std::string>& implicit_points() const { return implicit_points_; }

    bool has_value(const std::string& label) const;
    /// The polynomial standing for a length or number label (a variable
    /// monomial for lengths, a linear combination for numbers).
    MultiPoly value_expr(const std::string& label) const;
    std::optional<std::size_t> length_var(const std::string& label) const;
    std::vector<std::string> length_labels() const;

    /// Appends a query variable, widening every stored polynomial.
    std::size_t add_variable(VarRole role, const std::string& source);
    void add_constraint(MultiPoly c);

    /// Variable assignment from witness values (points and lengths), for
    /// residual checks; query variables are not assigned.
    std::vector<double> assignment_from(
        const std::map<std::string, std::array<double, 2>>& points,
        const std::map<std::string, double>& values) const;

    std::vector<std::string> variable_names() const;

private:
    friend AlgebraicModel compile(const ConstructionProgram&, const CompileOptions&);
    friend struct ModelBuilder;

    std::vector<VariableInfo> vars_;
    std::vector<MultiPoly> constraints_;
    std::map<std::string, std::pair<MultiPoly, MultiPoly>> points_;
    std::map<std::string, std::size_t> lengths_;
    std::map<std::string, MultiPoly> numbers_;
    std::vector<std::string> implicit_points_;
    PinRecord pinned_;
};

/// Compiles a construction into its polynomial model. The first free point is
/// pinned to (0,0); with PinMode::TwoPoints the second is pinned to (1,0).
/// Affine steps (midpoints, point reflections, dilations, square vertices)
/// become explicit coordinate expressions; intersections, line reflections
/// and equilateral vertices introduce fresh variables with membership,
/// perpendicularity and equal-distance constraints; each segment length v
/// contributes v^2 = squared distance, with v >= 0 left to root selection.
AlgebraicModel compile(const ConstructionProgram& program, const CompileOptions& options = {});

} // namespace geoelim::construction
