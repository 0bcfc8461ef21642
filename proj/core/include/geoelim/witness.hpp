#pragma once

#include "geoelim/construction.hpp"
#include "geoelim/model.hpp"

#include <array>
#include <map>
#include <string>

namespace geoelim::construction {

/// A concrete floating-point instance of a construction, used to select
/// intersection branches and to pick the geometrically meaningful root among
/// algebraic candidates.
struct Witness {
    std::map<std::string, std::array<double, 2>> points;
    std::map<std::string, double> values; // lengths and numbers
    unsigned seed = 0;
    /// For every hinted branch step: distance of the chosen candidate to the
    /// hint, and of the rejected one (infinity when only one candidate).
    std::map<std::string, std::pair<double, double>> branch_distances;
};

struct WitnessOptions {
    unsigned seed = 0;
    double tol = 1e-9;
    PinMode pin = PinMode::TwoPoints;
    std::optional<std::string> never_pin;
    /// Overrides for free points (used to fix a traced point).
    std::map<std::string, std::array<double, 2>> fixed;
    int max_attempts = 10;
};

/// Forward-evaluates the construction: pinned points take their pinned
/// values, hinted free points their hints, remaining free points
/// pseudo-random rationals in [-10, 10] with denominators up to 100 derived
/// from the seed. Quadratic branches resolve toward their hints. Degenerate
/// samples are retried with fresh seeds up to max_attempts, then reported
/// with the failing step. Deterministic in (program, options).
Witness numeric_witness(const ConstructionProgram& program, const WitnessOptions& options = {});

Witness numeric_witness(const ConstructionProgram& program, unsigned seed, double tol);

/// Largest constraint residual of the model at the witness, each constraint
/// normalized by its largest absolute coefficient.
double max_constraint_residual(const AlgebraicModel& model, const Witness& witness);

} // namespace geoelim::construction
