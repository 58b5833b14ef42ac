#pragma once

#include <string>

#include "stirap2d/config.hpp"

namespace stirap2d {

struct RunContext {
    std::string out_dir;   ///< overrides config.output.directory when non-empty
    unsigned threads = 0;  ///< 0 = all hardware threads
    bool heavy = false;    ///< paper-scale 513x513 grids
};

struct ExecResult {
    std::string out_dir;
    std::string manifest_path;
};

/// Runs one configured computation and writes its outputs. Grid outputs are
/// deterministic: identical config and machine give byte-identical files, for
/// any worker count. The manifest is written last.
ExecResult execute(const RunConfig& config, const RunContext& context = {});

} // namespace stirap2d
