#include "geoelim/corpus.hpp"

#include "geoelim/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace geoelim::dsl {

using exactmath::AlgebraicNumber;
using exactmath::MultiPoly;
using exactmath::Rational;
using json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read corpus file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

AlgebraicNumber number_from_target(const locus::RatioTarget& target) {
    if (const auto* r = std::get_if<Rational>(&target)) return AlgebraicNumber::rational(*r);
    const auto& s = std::get<locus::SurdTarget>(target);
    return AlgebraicNumber::surd(0, s.scale.get_num(), s.scale.get_den(),
                                 exactmath::Int(s.radicand));
}

const prover::RelationResult& first_relation(const RunReport& report) {
    for (const auto& outcome : report.outcomes)
        if (const auto* rel = std::get_if<prover::RelationResult>(&outcome.result)) return *rel;
    throw ConfigError("corpus script has no relation query where one was expected");
}

struct Checker {
    const json& expected;
    const std::string& dir;

    SelftestRow relation_row(const std::string& id, const Script& script, unsigned seed) {
        prover::RelationResult result = first_relation(run_script(script, seed));
        SelftestRow row;
        row.problem = id;
        AlgebraicNumber want = number_from_target(
            parse_ratio_target(expected.at("ratio").get<std::string>()));
        MultiPoly want_minpoly =
            exactmath::parse_poly(expected.at("minimal_polynomial").get<std::string>(), {"m"});
        row.expected = want.to_text();
        row.got = result.ratio.to_text();
        row.ok = result.ratio == want &&
                 result.minimal_polynomial == want_minpoly.primitive_integer_form();
        if (expected.contains("square_ratio")) {
            auto sq = exactmath::parse_rational(expected.at("square_ratio").get<std::string>());
            if (!sq) throw ConfigError("bad square_ratio in '" + dir + "/expected.json'");
            bool sq_ok = result.ratio.square_as_rational() == *sq;
            row.ok = row.ok && sq_ok;
            row.expected += " (squared " + exactmath::to_string(*sq) + ")";
            row.got += " (squared " + exactmath::to_string(result.ratio.square_as_rational()) + ")";
        }
        return row;
    }

    SelftestRow locus_x_row(const std::string& id, const Script& script, unsigned seed) {
        SelftestRow row;
        row.problem = id;
        const auto* lq = std::get_if<LocusQuery>(&script.queries.at(0).value);
        if (!lq) throw ConfigError("corpus script '" + id + "' has no locus query");
        locus::LocusOptions lopts;
        lopts.seed = seed;
        lopts.region = {-1, -1, 2, 2};
        locus::LocusResult result =
            locus_equation(script.program, lq->condition, lq->traced, lopts);
        MultiPoly want =
            exactmath::parse_poly(expected.at("x_polynomial").get<std::string>(), {"x"});
        row.expected = want.to_string({"x"});
        row.got = result.x_minimal ? result.x_minimal->to_string({"x"}) : "(none)";
        row.ok = result.x_minimal && equal_up_to_scale(*result.x_minimal, want);
        if (row.ok && expected.contains("x_roots")) {
            double tol = expected.value("root_tol", 1e-9);
            auto roots = exactmath::real_roots_numeric(*result.x_minimal, tol / 10);
            auto want_roots = expected.at("x_roots").get<std::vector<double>>();
            if (roots.size() != want_roots.size()) {
                row.ok = false;
            } else {
                for (std::size_t i = 0; i < roots.size(); ++i)
                    if (std::abs(roots[i] - want_roots[i]) > tol) row.ok = false;
            }
        }
        return row;
    }

    SelftestRow locus_intersect_row(const std::string& id, const Script& script, unsigned seed) {
        SelftestRow row;
        row.problem = id;
        if (script.queries.size() < 2)
            throw ConfigError("corpus script '" + id + "' needs two locus queries");
        const auto* q1 = std::get_if<LocusQuery>(&script.queries.at(0).value);
        const auto* q2 = std::get_if<LocusQuery>(&script.queries.at(1).value);
        if (!q1 || !q2) throw ConfigError("corpus script '" + id + "' needs two locus queries");
        auto region = expected.at("region").get<std::array<double, 4>>();
        locus::LocusOptions lopts;
        lopts.seed = seed;
        lopts.region = region;
        auto a = locus_equation(script.program, q1->condition, q1->traced, lopts);
        auto b = locus_equation(script.program, q2->condition, q2->traced, lopts);
        auto points = locus::intersect_loci_numeric(a, b, region, 1e-9);

        auto probe = expected.at("probe_point").get<std::array<double, 2>>();
        std::string length_label = expected.at("length").get<std::string>();
        double want_value = expected.at("length_value").get<double>();
        double tol = expected.value("length_tol", 1e-6);
        double got_value = locus::evaluate_conjecture_length(script.program, q1->traced, probe,
                                                             length_label, lopts);
        std::ostringstream exp, got;
        exp << "intersection in region, " << length_label << "(probe) = " << std::setprecision(9)
            << want_value;
        got << points.size() << " intersection(s), " << length_label
            << "(probe) = " << std::setprecision(9) << got_value;
        row.expected = exp.str();
        row.got = got.str();
        row.ok = !points.empty() && std::abs(got_value - want_value) <= tol;
        return row;
    }

    static RunReport run_script(const Script& script, unsigned seed) {
        RunOptions opts;
        opts.seed = seed;
        return run(script, opts);
    }
};

} // namespace

std::string SelftestSummary::table() const {
    std::ostringstream out;
    out << std::left << std::setw(12) << "problem" << std::setw(34) << "expected"
        << std::setw(34) << "got" << std::setw(10) << "time" << "status\n";
    for (const auto& row : rows) {
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << row.seconds << "s";
        out << std::left << std::setw(12) << row.problem << std::setw(34)
            << row.expected.substr(0, 32) << std::setw(34) << row.got.substr(0, 32)
            << std::setw(10) << t.str() << (row.ok ? "ok" : "MISMATCH") << "\n";
    }
    return out.str();
}

SelftestSummary corpus_selftest(const std::string& corpus_dir, unsigned seed) {
    const std::string expected_path = corpus_dir + "/expected.json";
    json expected_all;
    try {
        expected_all = json::parse(read_file(expected_path));
    } catch (const json::exception& e) {
        throw ConfigError("corrupted expected-answer file '" + expected_path +
                          "': " + e.what());
    }

    SelftestSummary summary;
    for (auto it = expected_all.begin(); it != expected_all.end(); ++it) {
        const std::string& id = it.key();
        const json& expected = it.value();
        std::string script_path = corpus_dir + "/" + id + ".gcs";
        Script script = parse_script(read_file(script_path));

        auto t0 = std::chrono::steady_clock::now();
        SelftestRow row;
        try {
            Checker checker{expected, corpus_dir};
            std::string kind = expected.at("kind").get<std::string>();
            if (kind == "relation") {
                row = checker.relation_row(id, script, seed);
            } else if (kind == "locus-x") {
                row = checker.locus_x_row(id, script, seed);
            } else if (kind == "locus-intersect") {
                row = checker.locus_intersect_row(id, script, seed);
            } else {
                throw ConfigError("unknown expected-answer kind '" + kind + "' in '" +
                                  expected_path + "'");
            }
        } catch (const json::exception& e) {
            throw ConfigError("corrupted expected-answer file '" + expected_path +
                              "': " + e.what());
        }
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        summary.all_ok = summary.all_ok && row.ok;
        summary.rows.push_back(std::move(row));
    }
    if (summary.rows.empty())
        throw ConfigError("expected-answer file '" + expected_path + "' lists no problems");
    return summary;
}

} // namespace geoelim::dsl
