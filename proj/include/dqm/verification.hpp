#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dqm/dual_number.hpp"

namespace dqm {

/// Result of one acceptance criterion.
struct CheckResult {
    int criterion = 0;
    std::string name;
    std::size_t instances = 0;
    std::size_t failures = 0;
    /// Smallest inequality slack seen, in the exact dual order.
    std::optional<DualNumber> worst_slack;
    /// Largest error/limit ratio over the numeric bounds (passes while <= 1).
    double worst_ratio = 0.0;
    /// First few failures, then informational lines.
    std::vector<std::string> notes;

    bool passed() const { return failures == 0; }
};

struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t max_size = 0;
    std::size_t instances = 0;
    std::vector<CheckResult> checks;
    double wall_seconds = 0.0;

    bool passed() const;
};

/// Runs the CLI with the given arguments (without the program name) and returns its exit code.
using CliRunner = std::function<int(const std::vector<std::string>&)>;

struct SuiteConfig {
    std::uint64_t seed = 20240917;
    /// Base trial count; per-criterion counts are derived from it.
    std::size_t trials = 1000;
    std::size_t max_size = 16;
    /// Criteria to run; empty means 1 through 10.
    std::vector<int> criteria;
    /// Test hook: records one corrupted inequality in this criterion.
    std::optional<int> inject_failure;
    /// Exit-code fixtures in criterion 10 are skipped when unset.
    CliRunner cli;
    /// Scratch directory for fixture files; a fresh temporary one when empty.
    std::filesystem::path work_dir;
};

inline constexpr int criterion_count = 10;

std::string criterion_name(int criterion);

/// Throws PreconditionViolated for an unknown criterion or a zero trial count.
CheckResult run_criterion(int criterion, const SuiteConfig& config);
RunReport run_suite(const SuiteConfig& config);

/// Single-line summary, e.g. "[PASS] 3 decomposition residuals: 2000 instances, worst ratio 1.2e-05".
std::string summary_line(const CheckResult& check);

/// JSON document with the RunReport fields; wall time omitted when `include_timing` is false.
std::string to_json(const RunReport& report, bool include_timing = true);

}  // namespace dqm
