#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace maxent::cli {

/// Exit codes of `maxent update`.
enum ExitCode : int {
  kConverged = 0,
  kInputError = 1,
  kInfeasible = 2,
  kNotConverged = 3,
};

/// Solves the problem file at `problem_path` and writes the report JSON to
/// `out_path`, or to `out` when no path is given. Diagnostics go to `err`.
int run_update(const std::string& problem_path, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err);

/// Runs the verification suite; exit 0 iff every check passed, 1 on usage
/// errors (trials < 1) or I/O failures, 4 when a check fails.
int run_verify(std::uint64_t seed, long long trials, const std::optional<std::string>& out_path,
               std::ostream& out, std::ostream& err);

}  // namespace maxent::cli
