#pragma once

#include "logmoduli/json_io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logmoduli {

struct CliOptions {
    std::string format = "json";  // "json" or "table"
    std::optional<std::string> characters_path;
    std::optional<long long> bound;
    bool expect_trivial = false;
    bool allow_multinode = false;
    bool real_dimensions = false;
    int jobs = 1;
};

struct RunResult {
    int exit_code = 0;   // 0 computed, 1 invariant violation, 2 input error
    std::string output;  // report text
    std::string diagnostics;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

const std::vector<std::string>& cli_commands();

// Resolves an input path, falling back to $LOGMODULI_FIXTURES/<path> when the path does not exist.
std::string resolve_input(const std::string& path);

// Runs one command on an already parsed document; the report is a JSON object.
// The exit code is written to `exit_code`.
Json run_document(const std::string& command, const GraphDocument& doc, const CliOptions& opts, int& exit_code);

RunResult run(const std::string& command, const std::vector<std::string>& inputs, const CliOptions& opts);

// Aligned two-column rendering of a JSON report.
std::string render_table(const Json& report);

int cli_main(int argc, char** argv);

}  // namespace logmoduli
