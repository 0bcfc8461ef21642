#pragma once

#include "geoelim/construction.hpp"
#include "geoelim/locus.hpp"
#include "geoelim/prover.hpp"

#include <string>
#include <variant>
#include <vector>

namespace geoelim::prover {
inline bool operator==(const RelationQuery& a, const RelationQuery& b) {
    return a.left == b.left && a.right == b.right;
}
} // namespace geoelim::prover

namespace geoelim::dsl {

struct LocusQuery {
    locus::LocusCondition condition;
    std::string traced;
    bool operator==(const LocusQuery&) const = default;
};

struct Query {
    std::variant<prover::RelationQuery, LocusQuery> value;
    int line = 0;
};

/// A parsed script: the construction program, its queries, and metadata.
struct Script {
    std::string source;
    construction::ConstructionProgram program;
    std::vector<Query> queries;
    std::string problem_id; // "#! id: ..." directive, may be empty
};

/// Line-oriented script grammar:
///   A = FreePoint() @ (x, y)         free point with optional position hint
///   E = Midpoint(A, C)               commands: Midpoint, Reflect, Dilate,
///   C, D = Square(A, B)              Line, PerpBisector, Perpendicular,
///   O = Intersect(g, c) near (x, y)  Circle, Intersect, Square, Equilateral,
///   s = Segment(A, C)                Segment
///   P = 4*t                          rational-linear number expressions
///   ? Relation(s, P)
///   ? Locus(Collinear(E, P2, B), P)  conditions: Collinear, RatioEq, LengthEq
/// '#' starts a comment; '#!' starts a metadata directive. Throws ParseError
/// with line/column and the expected-token set on malformed input.
Script parse_script(const std::string& text);

/// Canonical text for a script; parse(unparse(parse(s))) equals parse(s).
std::string unparse(const Script& script);

/// Parses a ratio target literal: "5/2", "sqrt(3)/2", "4/7*sqrt(21)".
locus::RatioTarget parse_ratio_target(const std::string& text);

std::string ratio_target_to_string(const locus::RatioTarget& target);

std::string condition_to_string(const locus::LocusCondition& condition);

} // namespace geoelim::dsl
