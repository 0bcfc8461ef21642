// Command-line front end: solve construction scripts, emit locus data, run
// the bundled corpus selftest.
//
// Exit codes: 0 success, 1 answer mismatch or engine failure, 2 parse error,
// 3 engine resource (budget) error.

#include "geoelim/corpus.hpp"
#include "geoelim/errors.hpp"
#include "geoelim/report.hpp"
#include "geoelim/script.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw geoelim::ConfigError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::array<double, 4> parse_region(const std::string& text) {
    std::array<double, 4> region{};
    std::istringstream in(text);
    char comma;
    if (!(in >> region[0] >> comma >> region[1] >> comma >> region[2] >> comma >> region[3]))
        throw geoelim::ConfigError("bad --region, expected x0,y0,x1,y1");
    return region;
}

int run_solve(const std::string& file, unsigned seed, bool json_out, bool no_pin_second,
              double tol, const std::optional<std::string>& region_text) {
    geoelim::dsl::Script script = geoelim::dsl::parse_script(read_file(file));
    geoelim::dsl::RunOptions opts;
    opts.seed = seed;
    opts.pin_second = !no_pin_second;
    opts.tol = tol;
    if (region_text) opts.region = parse_region(*region_text);
    geoelim::dsl::RunReport report = geoelim::dsl::run(script, opts);
    if (json_out) {
        std::cout << geoelim::dsl::report_to_json(report) << "\n";
    } else {
        for (const auto& outcome : report.outcomes) std::cout << outcome.text << "\n";
    }
    return kExitOk;
}

int run_locus(const std::string& file, const std::string& out_path, unsigned seed,
              const std::optional<std::string>& region_text, bool filter_hints) {
    geoelim::dsl::Script script = geoelim::dsl::parse_script(read_file(file));
    std::array<double, 4> region{-5, -5, 5, 5};
    if (region_text) region = parse_region(*region_text);

    std::vector<geoelim::locus::LocusResult> results;
    int index = 0;
    for (const auto& query : script.queries) {
        const auto* lq = std::get_if<geoelim::dsl::LocusQuery>(&query.value);
        if (!lq) continue;
        geoelim::locus::LocusOptions lopts;
        lopts.seed = seed;
        lopts.region = region;
        lopts.filter_with_hints = filter_hints;
        auto result =
            geoelim::locus::locus_equation(script.program, lq->condition, lq->traced, lopts);
        for (const auto& g : result.generators)
            std::cout << "locus " << index << ": " << g.to_string({"x", "y"}) << " = 0\n";
        if (result.x_minimal)
            std::cout << "locus " << index << " x: " << result.x_minimal->to_string({"x"})
                      << "\n";
        std::string path = out_path;
        if (script.queries.size() > 1) {
            auto dot = path.rfind('.');
            std::string suffix = "-" + std::to_string(index);
            path = dot == std::string::npos ? path + suffix
                                            : path.substr(0, dot) + suffix + path.substr(dot);
        }
        std::ofstream out(path);
        if (!out) throw geoelim::ConfigError("cannot write '" + path + "'");
        out << geoelim::dsl::points_to_csv(result.samples);
        std::cout << "locus " << index << ": " << result.samples.size() << " samples -> " << path
                  << "\n";
        results.push_back(std::move(result));
        ++index;
    }
    if (results.empty()) {
        std::cerr << "script has no locus queries\n";
        return kExitMismatch;
    }
    if (results.size() == 2) {
        auto points = geoelim::locus::intersect_loci_numeric(results[0], results[1], region, 1e-9);
        for (const auto& p : points) {
            char buf[80];
            std::snprintf(buf, sizeof(buf), "intersection: (%.12g, %.12g)\n", p[0], p[1]);
            std::cout << buf;
        }
    }
    return kExitOk;
}

int run_selftest(const std::string& corpus_dir, unsigned seed) {
    geoelim::dsl::SelftestSummary summary = geoelim::dsl::corpus_selftest(corpus_dir, seed);
    std::cout << summary.table();
    return summary.all_ok ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geoelim: compiles ruler-and-compass construction scripts into polynomial "
                 "systems and answers ratio and locus queries by exact elimination"};
    app.require_subcommand(1);

    std::string file, out_csv, corpus_dir = "corpus";
    unsigned seed = 1;
    bool json_out = false, no_pin_second = false, filter_hints = false;
    double tol = 1e-6;
    std::optional<std::string> region_text;

    auto* solve = app.add_subcommand("solve", "run a script's queries and print the answers");
    solve->add_option("file", file, "script file (.gcs)")->required();
    solve->add_option("--seed", seed, "witness seed");
    solve->add_flag("--json", json_out, "emit a machine-readable report");
    solve->add_flag("--no-pin-second", no_pin_second, "pin only the first free point to (0,0)");
    solve->add_option("--tol", tol, "root matching tolerance");
    solve->add_option("--region", region_text, "locus region x0,y0,x1,y1");

    auto* locus = app.add_subcommand("locus", "compute locus equations and emit sample points");
    locus->add_option("file", file, "script file (.gcs)")->required();
    locus->add_option("--emit-points", out_csv, "CSV output path")->required();
    locus->add_option("--region", region_text, "sampling region x0,y0,x1,y1");
    locus->add_option("--seed", seed, "witness seed");
    locus->add_flag("--filter-hints", filter_hints,
                    "drop samples whose forward evaluation rejects the condition");

    auto* selftest = app.add_subcommand("selftest", "run the bundled corpus against stored answers");
    selftest->add_option("--corpus", corpus_dir, "corpus directory");
    selftest->add_option("--seed", seed, "witness seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(file, seed, json_out, no_pin_second, tol, region_text);
        if (locus->parsed()) return run_locus(file, out_csv, seed, region_text, filter_hints);
        if (selftest->parsed()) return run_selftest(corpus_dir, seed);
    } catch (const geoelim::ParseError& e) {
        std::cerr << "parse error at line " << e.line << ", column " << e.column << ": "
                  << e.what() << "\n";
        return kExitParse;
    } catch (const geoelim::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}
