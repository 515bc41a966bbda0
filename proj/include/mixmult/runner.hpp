#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include <mixmult/scenario.hpp>
#include <mixmult/verify.hpp>

namespace mixmult
{

namespace exit_code
{
inline constexpr int ok = 0;
inline constexpr int verification = 1; // theorem violation or internal inconsistency
inline constexpr int input = 2;        // schema errors and input errors raised while running
inline constexpr int stabilization = 3; // non-stabilization, rescale search, tolerance not met
inline constexpr int semantic = 4;     // well-formed scenario with unusable content
} // namespace exit_code

// Exit code for an exception escaping a task.
int exit_code_for(const std::exception &e);

struct RunOptions {
    bool paranoid = false;
    unsigned jobs = 1;
    // Adds per-task wall time in milliseconds; reports then differ between runs.
    bool timings = false;
};

struct RunResult {
    nlohmann::json report;
    int exit_code = exit_code::ok;
};

// FNV-1a 64 of the canonical scenario dump, as 16 hex digits.
std::string scenario_hash(const Scenario &s);

// Runs every task in order. A failing task is recorded in its result and the
// first nonzero code is kept; later tasks still run.
RunResult run(const Scenario &scenario, const RunOptions &options = {});

nlohmann::json suite_json(const SuiteReport &report);

// Serialized form used on disk: two-space indent and a trailing newline.
std::string render(const nlohmann::json &doc);

struct SelftestResult {
    nlohmann::json report;
    bool passed = true;
};

// Runs every scenario `<name>.json` in dir (sorted by name) and compares the
// rendered report with `<name>.expected.json`. With write_golden the expected
// files are (re)written instead.
SelftestResult selftest(const std::filesystem::path &dir, unsigned jobs = 1, bool write_golden = false);

} // namespace mixmult
