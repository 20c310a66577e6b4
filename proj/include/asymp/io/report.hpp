#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "asymp/io/diagnostic.hpp"
#include "asymp/io/problem.hpp"
#include "json.hpp"

namespace asymp::io {

/// Process exit codes.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitFailure = 1,
  kExitParseError = 2,
  kExitHypothesisViolation = 3,
  kExitInconclusive = 4,
};

/// Command-line overrides of the task block.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<double> tolerance;
};

struct RunOutcome {
  nlohmann::json report;
  int exit_code = kExitSuccess;
  /// Comma-separated coordinate table (header row first), empty when the task has none.
  std::string table;
};

/// Executes the task block. Structured errors from the modules are caught and
/// reported with the task context; they never escape.
RunOutcome RunTask(const Problem& problem, const RunOverrides& overrides = {});

/// Report text: sorted keys, two-space indent, trailing newline.
std::string RenderReport(const nlohmann::json& report);

/// Report for a parse failure (exit code 2).
nlohmann::json ParseFailureReport(const ParseError& error);

}  // namespace asymp::io
