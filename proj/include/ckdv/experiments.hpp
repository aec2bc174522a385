#pragma once

#include "ckdv/config.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace ckdv {

struct RunOptions {
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 0;
    bool quiet = false;
    bool assert_mode = false; // turn failed summary checks into status 3
};

struct RunResult {
    int status = 0; // 0 ok, 1 config error, 2 numerical fault, 3 check failure
    std::string message;
};

// Executes one named experiment (simulate | picard | diagnose | operator-check |
// bilinear-probe | refine | sweep), writing manifest.json, series.csv,
// summary.json and optional dumps/plots under opts.out_dir. Deterministic for
// a fixed config + seed.
RunResult run_experiment(const std::string& name, const Config& cfg, const RunOptions& opts);

} // namespace ckdv
