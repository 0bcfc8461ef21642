#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geoelim/errors.hpp"
#include "geoelim/prover.hpp"
#include "geoelim/script.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace geoelim;
using construction::ConstructionProgram;
using exactmath::AlgebraicNumber;
using exactmath::MultiPoly;
using exactmath::Rational;
using prover::ProveOptions;
using prover::RelationQuery;
using prover::RelationResult;

namespace {

MultiPoly pm(const std::string& text) { return exactmath::parse_poly(text, {"m"}); }

dsl::Script corpus_script(const std::string& name) {
    std::ifstream in(std::string(GEOELIM_CORPUS_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return dsl::parse_script(buf.str());
}

RelationResult solve_corpus(const std::string& name, unsigned seed = 1) {
    dsl::Script script = corpus_script(name);
    const auto* query = std::get_if<RelationQuery>(&script.queries.at(0).value);
    REQUIRE(query != nullptr);
    ProveOptions opts;
    opts.seed = seed;
    return discover_ratio(script.program, *query, opts);
}

} // namespace

TEST_CASE("nested squares: ratio 8*sqrt(2) with minimal polynomial m^2 - 128") {
    RelationResult r = solve_corpus("problem06.gcs");
    CHECK(r.minimal_polynomial == pm("m^2 - 128"));
    CHECK(r.ratio == AlgebraicNumber::surd(0, 8, 1, 2));
    CHECK(r.verdict == RelationResult::Verdict::Unique);
    CHECK(r.eliminated == pm("m^2 - 128"));
    REQUIRE(r.candidates.size() == 1);
    CHECK(r.witness_ratio == doctest::Approx(8 * std::sqrt(2.0)).epsilon(1e-9));
    // the witness-selected root is within matching distance of the symbol
    CHECK(r.match_distance < 1e-6);
}

TEST_CASE("pentomino: ratio sqrt(10)/2 and area ratio 5/2") {
    RelationResult r = solve_corpus("problem15.gcs");
    CHECK(r.ratio == AlgebraicNumber::surd(0, 1, 2, 10));
    CHECK(r.minimal_polynomial == pm("2*m^2 - 5"));
    CHECK(square_ratio(r) == exactmath::make_rational(5, 2));
}

TEST_CASE("inscribed square: rational ratio 253/34") {
    RelationResult r = solve_corpus("problem23.gcs");
    CHECK(r.ratio == AlgebraicNumber::rational(exactmath::make_rational(253, 34)));
    CHECK(r.minimal_polynomial == pm("34*m - 253"));
    CHECK(square_ratio(r) == exactmath::make_rational(64009, 1156));
}

TEST_CASE("circumcenter chord: ratio 4*sqrt(21)/7 with a spurious branch reported") {
    RelationResult r = solve_corpus("problem47.gcs");
    CHECK(r.ratio == AlgebraicNumber::surd(0, 4, 7, 21));
    CHECK(r.minimal_polynomial == pm("7*m^2 - 48"));
    // the eliminated polynomial also carries the degenerate C = A branch
    CHECK(r.eliminated == pm("7*m^4 - 636*m^2 + 4032"));
    REQUIRE(r.candidates.size() == 2);
    CHECK(r.candidates[0].approx == doctest::Approx(4 * std::sqrt(21.0) / 7).epsilon(1e-9));
    CHECK(r.candidates[1].approx == doctest::Approx(2 * std::sqrt(21.0)).epsilon(1e-9));
    CHECK(r.verdict == RelationResult::Verdict::Unique);
}

TEST_CASE("square_ratio rejects ratios with irrational squares") {
    RelationResult r = solve_corpus("problem06.gcs");
    CHECK(square_ratio(r) == Rational(128));
    // (3 + sqrt(5))/8 squares to an irrational number
    RelationResult fake = r;
    fake.ratio = AlgebraicNumber::surd(3, 1, 8, 5);
    CHECK_THROWS_AS(square_ratio(fake), QueryError);
}

TEST_CASE("exactness: the selected ratio is a root of its minimal polynomial") {
    for (const char* name :
         {"problem06.gcs", "problem15.gcs", "problem23.gcs", "problem47.gcs"}) {
        CAPTURE(name);
        RelationResult r = solve_corpus(name);
        auto [a, b] = r.ratio.evaluate(r.minimal_polynomial);
        CHECK(exactmath::sign(a) == 0);
        CHECK(exactmath::sign(b) == 0);
        // and of the eliminated polynomial as well
        auto [c, d] = r.ratio.evaluate(r.eliminated);
        CHECK(exactmath::sign(c) == 0);
        CHECK(exactmath::sign(d) == 0);
    }
}

TEST_CASE("witness ratio lies within 1e-6 of an eliminated root on all corpus problems") {
    for (const char* name :
         {"problem06.gcs", "problem15.gcs", "problem23.gcs", "problem47.gcs"}) {
        CAPTURE(name);
        RelationResult r = solve_corpus(name);
        double best = 1e9;
        for (const auto& c : r.candidates) best = std::min(best, std::abs(c.approx - r.witness_ratio));
        CHECK(best < 1e-6);
    }
}

TEST_CASE("unrelated lengths have no constant ratio") {
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_free_point("B");
    p.add_free_point("C");
    p.add_free_point("D");
    p.add_segment_length("s1", "A", "B");
    p.add_segment_length("s2", "C", "D");
    CHECK_THROWS_AS(discover_ratio(p, RelationQuery{"s1", "s2"}, ProveOptions{}), QueryError);
}

TEST_CASE("relation queries validate their labels") {
    dsl::Script script = corpus_script("problem06.gcs");
    CHECK_THROWS_AS(discover_ratio(script.program, RelationQuery{"s", "nope"}, ProveOptions{}),
                    QueryError);
}

TEST_CASE("elimination budget violations propagate as resource errors") {
    dsl::Script script = corpus_script("problem47.gcs");
    const auto* query = std::get_if<RelationQuery>(&script.queries.at(0).value);
    ProveOptions opts;
    opts.gb.max_reductions = 5;
    CHECK_THROWS_AS(discover_ratio(script.program, *query, opts), ResourceError);
}

TEST_CASE("left side vanishing at the witness is rejected") {
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_free_point("B");
    p.add_segment_length("z", "A", "A"); // identically zero length
    p.add_segment_length("s", "A", "B");
    CHECK_THROWS_AS(discover_ratio(p, RelationQuery{"z", "s"}, ProveOptions{}), QueryError);
}
