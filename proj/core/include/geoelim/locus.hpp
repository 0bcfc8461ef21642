#pragma once

#include "geoelim/construction.hpp"
#include "geoelim/groebner.hpp"
#include "geoelim/model.hpp"
#include "geoelim/univariate.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace geoelim::locus {

/// Pure multiple of a square root: scale * sqrt(radicand).
struct SurdTarget {
    exactmath::Rational scale;
    long radicand = 1;
    bool operator==(const SurdTarget&) const = default;
};

using RatioTarget = std::variant<exactmath::Rational, SurdTarget>;

struct Collinear {
    std::string p, q, r;
    bool operator==(const Collinear&) const = default;
};

/// len_a / len_b = target, encoded by squaring (valid because lengths are
/// non-negative); surd targets become rational after squaring.
struct RatioEq {
    std::string len_a, len_b;
    RatioTarget target;
    bool operator==(const RatioEq&) const = default;
};

struct LengthEq {
    std::string len_a, len_b;
    bool operator==(const LengthEq&) const = default;
};

using LocusCondition = std::variant<Collinear, RatioEq, LengthEq>;

enum class DimensionHint { Curve, IsolatedPoints, Empty, FullPlane };

struct LocusResult {
    std::string traced;
    /// Generators of the elimination ideal in the traced point's coordinates;
    /// two-variable ring with x = v0, y = v1.
    std::vector<exactmath::MultiPoly> generators;
    std::optional<exactmath::MultiPoly> x_minimal, y_minimal; // one-variable ring
    std::optional<exactmath::UniFactorization> x_factors, y_factors;
    DimensionHint dimension = DimensionHint::Curve;
    std::vector<std::array<double, 2>> samples;
    exactmath::GroebnerStats stats;
};

struct LocusOptions {
    construction::PinMode pin = construction::PinMode::TwoPoints;
    exactmath::GroebnerOptions gb;
    double sample_tol = 1e-6;
    std::array<double, 4> region{-5, -5, 5, 5}; // x0, y0, x1, y1
    int grid = 64;
    unsigned seed = 1;
    /// When set, samples are additionally screened by forward evaluation with
    /// hint-selected branches; mirror-branch components are then dropped. Off
    /// by default: the ideal contains every branch and the default output
    /// reports it faithfully.
    bool filter_with_hints = false;
};

/// Implicit equation(s) of the locus of the traced free point under the
/// condition: compiles with the traced coordinates kept (never pinned),
/// adjoins the condition polynomial and eliminates everything else. Also
/// derives per-coordinate minimal polynomials when the ideal contains them,
/// their partial factorizations, a dimension hint and sample points.
LocusResult locus_equation(const construction::ConstructionProgram& program,
                           const LocusCondition& condition, const std::string& traced,
                           const LocusOptions& options = {});

/// Common zeros of two loci inside the region, to within tol, via grid
/// seeding plus 2D Newton refinement on one generator of each.
std::vector<std::array<double, 2>> intersect_loci_numeric(const LocusResult& a,
                                                          const LocusResult& b,
                                                          std::array<double, 4> region,
                                                          double tol);

/// Forward-evaluates the construction with the traced point fixed at the
/// given coordinates and returns the requested length.
double evaluate_conjecture_length(const construction::ConstructionProgram& program,
                                  const std::string& traced, std::array<double, 2> point,
                                  const std::string& length_label,
                                  const LocusOptions& options = {});

} // namespace geoelim::locus
