#pragma once

#include "strata/report.hpp"

namespace strata {

/// Batch-run configuration.  Invalid bounds are rejected before dispatch;
/// the seed is always echoed in the report.
struct RunConfig {
    std::string subcommand;
    int a = 1, b = 1;
    int p = 3, f = 1;
    std::string form_case = "auto"; // odd-char / char2-case1 / char2-case2
    int n = 1;                      // hasse signature parameter
    int N = 6;                      // truncation order
    std::vector<int> q_list;
    uint64_t seed = 1;
    long long budget = 2'000'000;   // enumeration / search guard
    long long sweep = 10'000;       // random-family sample size
    long long target = 1'000;       // accepted-datum target (hasse)
    int range = 2;                  // weight entry range
    std::vector<std::pair<int, int>> legs; // cmindex shape
    std::string output;             // empty = stdout
    std::string format = "json";    // json / csv / text
    std::string revalidate;         // closure: report file whose witnesses to re-verify
};

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct RunResult {
    int exit_code = kExitPass;
    json report;
    std::string rendered; // in the requested format
};

/// Dispatches one campaign; never throws for property failures (these are
/// encoded in the report and exit code).
RunResult run_campaign(const RunConfig& cfg);

/// Parses "key=value" lines (with # comments) into the config; unknown keys
/// are an error.
void apply_config_file(RunConfig& cfg, const std::string& path);

} // namespace strata
