#pragma once

#include "geoelim/algebraic_number.hpp"
#include "geoelim/construction.hpp"
#include "geoelim/groebner.hpp"
#include "geoelim/univariate.hpp"
#include "geoelim/witness.hpp"

#include <string>
#include <vector>

namespace geoelim::prover {

/// Asks for the constant c with right = c * left, both sides being length or
/// number labels of the program.
struct RelationQuery {
    std::string left;
    std::string right;
};

struct RelationResult {
    enum class Verdict { Unique, AmbiguousMultipleRoots };

    exactmath::AlgebraicNumber ratio;
    /// Minimal polynomial of the selected ratio (univariate, primitive
    /// integer coefficients, positive leading coefficient).
    exactmath::MultiPoly minimal_polynomial;
    /// Square-free part of the full eliminated polynomial; its positive real
    /// roots are the candidates below.
    exactmath::MultiPoly eliminated;
    std::vector<exactmath::RootCandidate> candidates;
    double witness_ratio = 0;
    double match_distance = 0;
    Verdict verdict = Verdict::Unique;
    construction::Witness witness;
    exactmath::GroebnerStats stats;
};

struct ProveOptions {
    unsigned seed = 1;
    double match_tol = 1e-6;
    double witness_tol = 1e-9;
    construction::PinMode pin = construction::PinMode::TwoPoints;
    exactmath::GroebnerOptions gb;
};

/// Compiles the program, adjoins m*left - right = 0 for a fresh ratio
/// variable m, eliminates everything but m, and selects the positive root
/// matching the witness ratio within match_tol. A second witness with a
/// different seed must select the same root, otherwise the verdict degrades
/// to AmbiguousMultipleRoots.
RelationResult discover_ratio(const construction::ConstructionProgram& program,
                              const RelationQuery& query, const ProveOptions& options = {});

/// Exact square of the discovered ratio as a rational; defined for rational
/// ratios and pure surds (p = 0). Used for area ratios of similar figures.
exactmath::Rational square_ratio(const RelationResult& result);

} // namespace geoelim::prover
