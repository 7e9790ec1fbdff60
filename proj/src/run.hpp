#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace phx {

enum ExitCode { kExitOk = 0, kExitInternal = 1, kExitConfig = 2, kExitDomain = 3, kExitValidation = 4 };

struct RunResult {
    int code = kExitOk;
    std::string report;                  // text for stdout
    std::vector<std::string> artifacts;  // paths written
};

// Executes the configured command.  Errors never escape: they become an exit
// code plus an "error: ..." line in the report.
RunResult run(const RunConfig& cfg);

// Same as run; a non-empty `out_dir` or `command` replaces the configured one.
RunResult run_text(const std::string& config_text, const std::string& out_dir = "", const std::string& command = "");
RunResult run_file(const std::string& path, const std::string& out_dir = "", const std::string& command = "");

}  // namespace phx
