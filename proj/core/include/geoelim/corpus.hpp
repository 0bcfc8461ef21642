#pragma once

#include "geoelim/report.hpp"

#include <string>
#include <vector>

namespace geoelim::dsl {

struct SelftestRow {
    std::string problem;
    std::string expected;
    std::string got;
    double seconds = 0;
    bool ok = false;
};

struct SelftestSummary {
    std::vector<SelftestRow> rows;
    bool all_ok = true;

    std::string table() const;
};

/// Runs every bundled corpus script against the stored exact answers in
/// <corpus_dir>/expected.json. Missing or corrupt files raise ConfigError
/// naming the file; a mismatch flips the row and the summary to failure.
SelftestSummary corpus_selftest(const std::string& corpus_dir, unsigned seed = 1);

} // namespace geoelim::dsl
