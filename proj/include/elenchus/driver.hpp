#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "elenchus/search.hpp"
#include "elenchus/szs.hpp"
#include "elenchus/tptp.hpp"

namespace elenchus::driver {

enum class EmitFormat : std::uint8_t { None, Dot, Text };

struct Options {
  Ruleset ruleset{};
  /// Unset means: Strict on quantifier-free input, Heuristic otherwise.
  std::optional<PreferDefense> prefer_defense;
  int depth_limit = 30;
  std::chrono::milliseconds time_limit{60000};
  bool trace = false;
  EmitFormat emit = EmitFormat::None;
  /// Target file for --emit-strategy; empty derives <problem>.strategy.<ext>.
  std::string strategy_out;
  /// Root for include(...) resolution; empty uses the problem's directory.
  std::string include_dir;
};

struct ProveReport {
  std::string problem;
  SzsStatus status;
  double seconds = 0.0;
  bool propositional = false;
  long nodes = 0;
};

/// Parse, combine, search, classify. Prints exactly one line
/// `% SZS status <Status> for <problem>` to `out` (plus explored moves when
/// tracing); diagnostics go to `diag`.
ProveReport prove_file(const std::string& path, const Options& options, std::ostream& out,
                       std::ostream& diag);

int exit_code(const SzsStatus& status);

struct BatchRecord {
  std::string problem;
  std::string intended;  // from the `% Status (intuit.)` header, may be empty
  std::string computed;
  std::string agrees;  // "+", "-", or empty when no intended status
  std::string reason;
  double seconds = 0.0;
};

/// Reads the ILTP-style intended-status header comment, if present.
std::optional<std::string> intended_status(const std::string& path);

/// Runs prove over every *.p file in `dir` (sorted), each with
/// `per_problem_timeout`, writes a CSV to `csv_path` and a one-line summary
/// to `summary`. Individual failures are recorded, never abort the batch.
/// `jobs` > 1 proves problems concurrently; records stay in input order.
std::vector<BatchRecord> run_batch(const std::string& dir, const Options& options,
                                   std::chrono::milliseconds per_problem_timeout,
                                   const std::string& csv_path, std::ostream& summary,
                                   int jobs = 1);

std::string csv_line(const BatchRecord& r);

}  // namespace elenchus::driver
