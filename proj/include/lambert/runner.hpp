#pragma once
// Subcommand execution behind the lambert_lab front end. Reports are returned
// as strings so the caller decides where they go.

#include "lambert/config.hpp"
#include "lambert/criteria.hpp"

#include <string>
#include <vector>

namespace lambert {

enum class Command { check, norm, expect, apply, truncate, witness, decay, demo };

struct RunRequest {
    Command command = Command::check;
    std::size_t keep = 0;     ///< truncate
    std::size_t count = 0;    ///< witness
    std::size_t horizon = 0;  ///< decay
    std::string demo;         ///< demo instance name
};

struct RunResult {
    int exit_code = 0;
    std::string report;  ///< primary output (stdout or --out)
    std::string notes;   ///< secondary output (stderr)
};

inline constexpr int kExitDecided = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

/// 0 for Compact/NotCompact, 2 for Inconclusive.
[[nodiscard]] int exit_code_for(const Verdict& v) noexcept;

/// Seventeen significant digits, the CSV number format.
[[nodiscard]] std::string format_number(double x);

/// Columns n, mu, eu, ew, gauge, term, partial_sum.
[[nodiscard]] std::string atom_table_csv(const std::vector<AtomRow>& rows);

[[nodiscard]] std::string verdict_text(const Verdict& v);

/// The compactness verdict for a configuration.
[[nodiscard]] Verdict run_check(const RunConfig& config);

/// Library errors propagate; the front end renders them.
[[nodiscard]] RunResult run(const RunConfig& config, const RunRequest& request);

/// Gallery walkthrough: "example_2_5_b" or "example_2_5_c".
[[nodiscard]] RunResult run_demo(const std::string& name, const RunOptions& options);

}  // namespace lambert
