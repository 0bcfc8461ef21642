#include "geoelim/report.hpp"

#include "geoelim/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <sstream>

namespace geoelim::dsl {

using exactmath::AlgebraicNumber;
using json = nlohmann::json;

namespace {

json number_to_json(const AlgebraicNumber& n) {
    if (n.is_rational()) {
        return json{{"kind", "rational"},
                    {"p", n.rational_value().get_num().get_str()},
                    {"q", "0"},
                    {"r", n.rational_value().get_den().get_str()},
                    {"d", "0"}};
    }
    return json{{"kind", "quadratic-surd"},
                {"p", n.p().get_str()},
                {"q", n.q().get_str()},
                {"r", n.r().get_str()},
                {"d", n.d().get_str()}};
}

std::string poly_text(const exactmath::MultiPoly& p, const std::string& var) {
    return p.to_string({var});
}

std::string dimension_text(locus::DimensionHint d) {
    switch (d) {
    case locus::DimensionHint::Curve: return "curve";
    case locus::DimensionHint::IsolatedPoints: return "isolated-points";
    case locus::DimensionHint::Empty: return "empty";
    case locus::DimensionHint::FullPlane: return "full-plane";
    }
    return "curve";
}

json factors_to_json(const exactmath::UniFactorization& f, const std::string& var) {
    json parts = json::array();
    for (const auto& part : f.parts) {
        parts.push_back(json{{"factor", poly_text(part.poly, var)},
                             {"multiplicity", part.multiplicity},
                             {"known_irreducible", part.known_irreducible}});
    }
    return json{{"content", exactmath::to_string(f.content)},
                {"parts", parts},
                {"fully_factored", f.fully_factored}};
}

json stats_to_json(const exactmath::GroebnerStats& s) {
    return json{{"spairs", s.spairs_considered}, {"reductions", s.reductions}};
}

json relation_to_json(const prover::RelationQuery& query,
                      const prover::RelationResult& result) {
    json candidates = json::array();
    for (const auto& c : result.candidates) {
        json entry{{"approx", c.approx}};
        if (c.exact) {
            entry["exact"] = number_to_json(*c.exact);
            entry["text"] = c.exact->to_text();
        } else {
            entry["non_surd"] = true;
        }
        candidates.push_back(entry);
    }
    json witness_lengths = json::object();
    for (const auto& [label, value] : result.witness.values) witness_lengths[label] = value;
    return json{
        {"kind", "relation"},
        {"left", query.left},
        {"right", query.right},
        {"ratio", number_to_json(result.ratio)},
        {"ratio_text", result.ratio.to_text()},
        {"minimal_polynomial", poly_text(result.minimal_polynomial, "m")},
        {"eliminated", poly_text(result.eliminated, "m")},
        {"candidates", candidates},
        {"witness", {{"seed", result.witness.seed}, {"values", witness_lengths}}},
        {"witness_ratio", result.witness_ratio},
        {"match_distance", result.match_distance},
        {"verdict", result.verdict == prover::RelationResult::Verdict::Unique
                        ? "unique"
                        : "ambiguous-multiple-roots"},
        {"stats", stats_to_json(result.stats)},
    };
}

json locus_to_json(const LocusQuery& query, const locus::LocusResult& result) {
    json generators = json::array();
    for (const auto& g : result.generators) generators.push_back(g.to_string({"x", "y"}));
    json samples = json::array();
    for (const auto& s : result.samples) samples.push_back(json::array({s[0], s[1]}));
    json out{
        {"kind", "locus"},
        {"traced", result.traced},
        {"condition", condition_to_string(query.condition)},
        {"generators", generators},
        {"dimension", dimension_text(result.dimension)},
        {"samples", samples},
        {"stats", stats_to_json(result.stats)},
    };
    if (result.x_minimal) out["x_minimal"] = poly_text(*result.x_minimal, "x");
    if (result.y_minimal) out["y_minimal"] = poly_text(*result.y_minimal, "y");
    if (result.x_factors) out["x_factors"] = factors_to_json(*result.x_factors, "x");
    if (result.y_factors) out["y_factors"] = factors_to_json(*result.y_factors, "y");
    return out;
}

std::string locus_text(const LocusQuery& query, const locus::LocusResult& result) {
    std::ostringstream out;
    out << "locus of " << result.traced << " under " << condition_to_string(query.condition)
        << ":";
    for (const auto& g : result.generators)
        out << "\n  " << g.to_string({"x", "y"}) << " = 0";
    if (result.x_minimal) {
        out << "\n  x: " << poly_text(*result.x_minimal, "x");
        if (result.x_factors) {
            out << "  factors:";
            for (const auto& part : result.x_factors->parts) {
                out << " (" << poly_text(part.poly, "x") << ")";
                if (part.multiplicity > 1) out << "^" << part.multiplicity;
                if (!part.known_irreducible) out << " [not fully factored]";
            }
        }
    }
    if (result.y_minimal) out << "\n  y: " << poly_text(*result.y_minimal, "y");
    out << "\n  dimension: " << dimension_text(result.dimension);
    out << "\n  samples: " << result.samples.size();
    return out.str();
}

} // namespace

std::string relation_text(const prover::RelationQuery& query,
                          const prover::RelationResult& result) {
    return query.right + " = (" + result.ratio.to_text() + ") * " + query.left;
}

RunReport run(const Script& script, const RunOptions& options) {
    RunReport report;
    report.id = script.problem_id.empty() ? "script" : script.problem_id;
    report.seed = options.seed;
    report.pin_second = options.pin_second;
    auto t0 = std::chrono::steady_clock::now();

    for (const auto& query : script.queries) {
        auto q0 = std::chrono::steady_clock::now();
        QueryOutcome outcome;
        outcome.query = query;
        if (const auto* rel = std::get_if<prover::RelationQuery>(&query.value)) {
            prover::ProveOptions popts;
            popts.seed = options.seed;
            popts.match_tol = options.tol;
            popts.pin = options.pin_second ? construction::PinMode::TwoPoints
                                           : construction::PinMode::FirstOnly;
            prover::RelationResult result = discover_ratio(script.program, *rel, popts);
            outcome.text = relation_text(*rel, result);
            outcome.result = std::move(result);
        } else {
            const auto& loc = std::get<LocusQuery>(query.value);
            locus::LocusOptions lopts;
            lopts.seed = options.seed;
            lopts.sample_tol = options.tol;
            lopts.pin = options.pin_second ? construction::PinMode::TwoPoints
                                           : construction::PinMode::FirstOnly;
            if (options.region) lopts.region = *options.region;
            locus::LocusResult result =
                locus_equation(script.program, loc.condition, loc.traced, lopts);
            outcome.text = locus_text(loc, result);
            outcome.result = std::move(result);
        }
        outcome.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - q0).count();
        report.outcomes.push_back(std::move(outcome));
    }
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string report_to_json(const RunReport& report) {
    json queries = json::array();
    for (const auto& outcome : report.outcomes) {
        json entry;
        if (const auto* rel = std::get_if<prover::RelationResult>(&outcome.result)) {
            entry = relation_to_json(std::get<prover::RelationQuery>(outcome.query.value), *rel);
        } else {
            entry = locus_to_json(std::get<LocusQuery>(outcome.query.value),
                                  std::get<locus::LocusResult>(outcome.result));
        }
        entry["text"] = outcome.text;
        entry["seconds"] = outcome.seconds;
        queries.push_back(std::move(entry));
    }
    json root{{"script", report.id},
              {"seed", report.seed},
              {"pin_two_points", report.pin_second},
              {"queries", queries},
              {"seconds", report.seconds}};
    return root.dump(2);
}

std::string points_to_csv(const std::vector<std::array<double, 2>>& points) {
    std::ostringstream out;
    out << "x,y\n";
    for (const auto& p : points) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", p[0], p[1]);
        out << buf;
    }
    return out.str();
}

} // namespace geoelim::dsl
