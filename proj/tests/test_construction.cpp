#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geoelim/errors.hpp"
#include "geoelim/model.hpp"
#include "geoelim/script.hpp"
#include "geoelim/witness.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace geoelim;
using construction::AlgebraicModel;
using construction::CompileOptions;
using construction::ConstructionProgram;
using construction::PinMode;
using construction::VarRole;
using construction::Witness;
using construction::WitnessOptions;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ConstructionProgram corpus_program(const std::string& name) {
    return dsl::parse_script(read_file(std::string(GEOELIM_CORPUS_DIR) + "/" + name)).program;
}

int count_role(const AlgebraicModel& model, VarRole role) {
    int n = 0;
    for (const auto& v : model.variables())
        if (v.role == role) ++n;
    return n;
}

// Circumcenter layout with sketch coordinates, evaluated without pinning.
const char* kUnpinnedCircumcenter = R"(
B = FreePoint() @ (-5.41, -5.8)
A = FreePoint() @ (-0.78, 4.18)
g = PerpBisector(A, B)
D = Dilate(B, 8/11, A)
Ap = Dilate(A, 1/8, D)
c = Circle(A, Ap)
O = Intersect(c, g) near (0.84, -2.63)
d = Circle(O, A)
E = Reflect(D, O)
h = Line(A, E)
f = Segment(A, B)
i = Segment(D, Ap)
C = Intersect(d, h) near (7.7, -4.01)
j = Segment(C, E)
)";

} // namespace

TEST_CASE("program validation catches structural mistakes") {
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_free_point("B");
    p.add_midpoint("M", "A", "B");
    CHECK_NOTHROW(p.validate());

    ConstructionProgram undefined;
    undefined.add_free_point("A");
    undefined.add_midpoint("M", "A", "Z");
    CHECK_THROWS_AS(undefined.validate(), CompileError);

    ConstructionProgram duplicate;
    duplicate.add_free_point("A");
    duplicate.add_free_point("A");
    CHECK_THROWS_AS(duplicate.validate(), CompileError);

    ConstructionProgram no_free;
    no_free.append({construction::StepKind::NumExpr,
                    {"n"},
                    {},
                    {},
                    {},
                    construction::LinearCombo{{}, exactmath::Rational(1)}});
    CHECK_THROWS_AS(no_free.validate(), CompileError);

    // quadratic branch steps need hints
    ConstructionProgram no_hint;
    no_hint.add_free_point("A");
    no_hint.add_free_point("B");
    no_hint.add_circle("c", "A", "B");
    no_hint.add_line("l", "A", "B");
    no_hint.append({construction::StepKind::IntersectLineCircle, {"X"}, {"l", "c"}, {}, {}, {}});
    CHECK_THROWS_AS(no_hint.validate(), CompileError);
}

TEST_CASE("empty program compiles to an empty model") {
    ConstructionProgram p;
    AlgebraicModel model = compile(p);
    CHECK(model.var_count() == 0);
    CHECK(model.constraints().empty());
    CHECK(model.implicit_points().empty());
}

TEST_CASE("affine-only construction compiles with only length variables") {
    AlgebraicModel model = compile(corpus_program("problem06.gcs"));
    // both free points pinned, every point affine: two length variables and
    // their two quadratic constraints, nothing else
    CHECK(model.var_count() == 2);
    CHECK(count_role(model, VarRole::Length) == 2);
    CHECK(count_role(model, VarRole::ImplicitCoord) == 0);
    CHECK(count_role(model, VarRole::BaseCoord) == 0);
    CHECK(model.constraints().size() == 2);
    CHECK(model.implicit_points().empty());
    CHECK(model.pinned().pinned("A"));
    CHECK(model.pinned().pinned("B"));
    CHECK(model.has_value("P")); // number labels are explicit expressions
}

TEST_CASE("explicit coordinates stay affine in the variables") {
    AlgebraicModel model = compile(corpus_program("problem06.gcs"));
    for (const auto& label : {"A", "B", "C", "D", "E", "E1", "E2", "E3", "E4"}) {
        auto [x, y] = model.point_coords(label);
        CHECK(x.total_degree() <= 1);
        CHECK(y.total_degree() <= 1);
    }
}

TEST_CASE("intersections classify as implicit points, dilations stay explicit") {
    AlgebraicModel model = compile(corpus_program("problem47.gcs"));
    auto implicit = model.implicit_points();
    CHECK(implicit == std::vector<std::string>{"O", "C"});
    for (const auto& label : {"D", "Ap", "E"}) {
        auto [x, y] = model.point_coords(label);
        CHECK(x.total_degree() <= 1);
        CHECK(y.total_degree() <= 1);
    }
    CHECK(model.length_var("f").has_value());
    CHECK(model.length_var("i").has_value());
    CHECK(model.length_var("j").has_value());
}

TEST_CASE("linear folding resolves rational line-line intersections exactly") {
    AlgebraicModel model = compile(corpus_program("problem23.gcs"));
    CHECK(count_role(model, VarRole::ImplicitCoord) == 0);
    auto [ex, ey] = model.point_coords("E");
    CHECK(ex.is_constant());
    CHECK(ex.constant_value() == exactmath::make_rational(253, 34));
    CHECK(ey.constant_value() == exactmath::make_rational(-253, 34));
}

TEST_CASE("witness: midpoint of pinned points") {
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_free_point("B");
    p.add_midpoint("M", "A", "B");
    Witness w = numeric_witness(p, 1, 1e-9);
    CHECK(w.points.at("M")[0] == doctest::Approx(0.5));
    CHECK(w.points.at("M")[1] == doctest::Approx(0.0));
}

TEST_CASE("witness reproduces the inscribed-square sketch values") {
    Witness w = numeric_witness(corpus_program("problem23.gcs"), 1, 1e-9);
    CHECK(std::round(w.points.at("E")[0] * 100) / 100 == doctest::Approx(7.44));
    CHECK(std::round(w.points.at("E")[1] * 100) / 100 == doctest::Approx(-7.44));
    CHECK(std::round(w.values.at("m") * 100) / 100 == doctest::Approx(7.44));
}

TEST_CASE("witness with pinning disabled follows the sketch hints") {
    ConstructionProgram p = dsl::parse_script(kUnpinnedCircumcenter).program;
    WitnessOptions opts;
    opts.seed = 1;
    opts.pin = PinMode::None;
    Witness w = numeric_witness(p, opts);
    CHECK(w.points.at("B")[0] == doctest::Approx(-5.41));
    CHECK(w.points.at("A")[1] == doctest::Approx(4.18));
    CHECK(w.points.at("O")[0] == doctest::Approx(0.84).epsilon(0.01));
    CHECK(w.points.at("O")[1] == doctest::Approx(-2.63).epsilon(0.01));
    CHECK(w.points.at("C")[0] == doctest::Approx(7.7).epsilon(0.01));
    CHECK(w.points.at("C")[1] == doctest::Approx(-4.01).epsilon(0.01));
    CHECK(w.values.at("j") == doctest::Approx(2.62).epsilon(0.01));
    CHECK(w.values.at("i") == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("witness satisfies every model constraint") {
    for (const char* name :
         {"problem06.gcs", "problem15.gcs", "problem23.gcs", "problem47.gcs"}) {
        CAPTURE(name);
        ConstructionProgram p = corpus_program(name);
        AlgebraicModel model = compile(p);
        Witness w = numeric_witness(p, 7, 1e-9);
        CHECK(max_constraint_residual(model, w) < 1e-9);
    }
}

TEST_CASE("explicit coordinate expressions match the forward evaluation") {
    for (const char* name : {"problem23.gcs", "problem47.gcs"}) {
        CAPTURE(name);
        ConstructionProgram p = corpus_program(name);
        AlgebraicModel model = compile(p);
        Witness w = numeric_witness(p, 11, 1e-9);
        auto assignment = model.assignment_from(w.points, w.values);
        for (const auto& [label, coords] : w.points) {
            CAPTURE(label);
            auto [x, y] = model.point_coords(label);
            CHECK(x.eval(assignment) == doctest::Approx(coords[0]).epsilon(1e-9));
            CHECK(y.eval(assignment) == doctest::Approx(coords[1]).epsilon(1e-9));
        }
    }
}

TEST_CASE("witness branch choices are strictly nearer their hints") {
    Witness w = numeric_witness(corpus_program("problem47.gcs"), 3, 1e-9);
    REQUIRE(w.branch_distances.count("O") == 1);
    REQUIRE(w.branch_distances.count("C") == 1);
    for (const auto& [label, dist] : w.branch_distances) {
        CAPTURE(label);
        CHECK(dist.first < dist.second);
    }
}

TEST_CASE("witness determinism and seed sensitivity") {
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_free_point("B");
    p.add_free_point("Q"); // unpinned, unhinted: randomized
    p.add_segment_length("s", "A", "Q");
    WitnessOptions opts;
    opts.seed = 42;
    Witness w1 = numeric_witness(p, opts);
    Witness w2 = numeric_witness(p, opts);
    CHECK(w1.points.at("Q") == w2.points.at("Q"));
    opts.seed = 43;
    Witness w3 = numeric_witness(p, opts);
    CHECK(w1.points.at("Q") != w3.points.at("Q"));
}

TEST_CASE("witness resamples and then reports a degenerate step") {
    // Intersecting a line with itself never resolves; the error names the step.
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_free_point("B");
    p.add_line("l", "A", "B");
    p.add_line("k", "A", "B");
    p.add_intersect("X", "l", "k");
    try {
        numeric_witness(p, 1, 1e-9);
        FAIL("expected DegeneracyError");
    } catch (const DegeneracyError& e) {
        CHECK(std::string(e.what()).find("X") != std::string::npos);
    }
}

TEST_CASE("fixed traced points override free point placement") {
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_free_point("B");
    p.add_free_point("P", construction::Hint{0.3, 0.2});
    p.add_segment_length("d", "P", "A");
    WitnessOptions opts;
    opts.never_pin = "P";
    opts.fixed["P"] = {0.25, 0.5};
    Witness w = numeric_witness(p, opts);
    CHECK(w.points.at("P")[0] == doctest::Approx(0.25));
    CHECK(w.points.at("P")[1] == doctest::Approx(0.5));
    CHECK(w.values.at("d") == doctest::Approx(std::sqrt(0.25 * 0.25 + 0.5 * 0.5)));
}

TEST_CASE("compile rejects references to undefined labels") {
    ConstructionProgram p;
    p.add_free_point("A");
    p.add_dilate("X", "A", exactmath::Rational(2), "Z");
    CHECK_THROWS_AS(compile(p), CompileError);
}
