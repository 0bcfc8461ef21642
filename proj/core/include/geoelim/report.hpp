#pragma once

#include "geoelim/locus.hpp"
#include "geoelim/prover.hpp"
#include "geoelim/script.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace geoelim::dsl {

struct RunOptions {
    unsigned seed = 1;
    bool pin_second = true;
    double tol = 1e-6;
    std::optional<std::array<double, 4>> region;
};

struct QueryOutcome {
    Query query;
    std::variant<prover::RelationResult, locus::LocusResult> result;
    std::string text; // human-readable rendering
    double seconds = 0;
};

/// Deterministic record of one script run.
struct RunReport {
    std::string id;
    unsigned seed = 1;
    bool pin_second = true;
    std::vector<QueryOutcome> outcomes;
    double seconds = 0;
};

RunReport run(const Script& script, const RunOptions& options = {});

/// Machine form of the report; validates against schema/run_report.schema.json.
std::string report_to_json(const RunReport& report);

/// Renders "P = (8*sqrt(2)) * s" for a relation answer.
std::string relation_text(const prover::RelationQuery& query,
                          const prover::RelationResult& result);

/// Sample points (or any point list) as CSV with 12 significant digits.
std::string points_to_csv(const std::vector<std::array<double, 2>>& points);

} // namespace geoelim::dsl
