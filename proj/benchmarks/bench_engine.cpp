#include "geoelim/groebner.hpp"
#include "geoelim/prover.hpp"
#include "geoelim/script.hpp"
#include "geoelim/univariate.hpp"
#include "geoelim/witness.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

namespace {

using namespace geoelim;

dsl::Script load(const std::string& name) {
    std::ifstream in(std::string(GEOELIM_CORPUS_DIR) + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return dsl::parse_script(buf.str());
}

void BM_ParseCorpusScript(benchmark::State& state) {
    std::ifstream in(std::string(GEOELIM_CORPUS_DIR) + "/problem06.gcs");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    for (auto _ : state) benchmark::DoNotOptimize(dsl::parse_script(text));
}
BENCHMARK(BM_ParseCorpusScript);

void BM_WitnessEvaluation(benchmark::State& state) {
    dsl::Script script = load("problem47.gcs");
    for (auto _ : state) {
        construction::WitnessOptions opts;
        opts.seed = 1;
        benchmark::DoNotOptimize(numeric_witness(script.program, opts));
    }
}
BENCHMARK(BM_WitnessEvaluation);

void BM_DiscoverRatio(benchmark::State& state) {
    static const char* files[] = {"problem06.gcs", "problem23.gcs", "problem15.gcs",
                                  "problem47.gcs"};
    dsl::Script script = load(files[state.range(0)]);
    const auto* query = std::get_if<prover::RelationQuery>(&script.queries.at(0).value);
    for (auto _ : state) {
        prover::ProveOptions opts;
        benchmark::DoNotOptimize(discover_ratio(script.program, *query, opts));
    }
}
BENCHMARK(BM_DiscoverRatio)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_QuinticFactor(benchmark::State& state) {
    exactmath::MultiPoly f =
        exactmath::parse_poly("64*x^5 - 128*x^4 + 80*x^3 - 17*x^2 + x", {"x"});
    for (auto _ : state) benchmark::DoNotOptimize(exactmath::factor_univariate(f));
}
BENCHMARK(BM_QuinticFactor);

void BM_EliminationSmall(benchmark::State& state) {
    auto f1 = exactmath::parse_poly("x - t", {"t", "x", "y"});
    auto f2 = exactmath::parse_poly("y - t^2", {"t", "x", "y"});
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            exactmath::eliminate({f1, f2}, std::set<std::size_t>{1, 2}));
    }
}
BENCHMARK(BM_EliminationSmall);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
