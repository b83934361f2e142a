#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tubewf::accept {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured-vs-expected summary
};

struct Options {
    std::uint64_t seed = 20240101;
    std::filesystem::path outdir;  // empty = no artifacts except where required
};

/// Runs the full acceptance suite (13 criteria). Deterministic for a fixed
/// seed; artifacts (when an outdir is given) are byte-stable across runs.
std::vector<CriterionResult> run_all(const Options& opts);

bool all_passed(const std::vector<CriterionResult>& results);

/// One pass/fail line per criterion.
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace tubewf::accept
