#pragma once

#include "seqmod/frontend/problem.hpp"
#include "seqmod/kernel/search.hpp"

#include <json.hpp>

#include <string>

namespace seqmod {

enum ExitCode { kExitProved = 0, kExitExhausted = 1, kExitInput = 2, kExitResource = 3, kExitCheckFailed = 4 };

struct RunOptions {
  std::string theory = "fol";  // fol | enum | lra
  SearchConfig search;
  bool check = false;
  bool timing = false;
};

struct RunReport {
  int exit_code = kExitExhausted;
  nlohmann::ordered_json json;

  std::string outcome() const { return json.value("outcome", ""); }
  std::string text() const;
};

/// Runs the configured search on a parsed problem.
RunReport run_problem(const Problem& problem, const RunOptions& options);
/// Reads, parses and runs a file; input errors become a report with exit code 2.
RunReport run_file(const std::string& path, const RunOptions& options);

/// Sets the log level from SEQMOD_LOG (trace, debug, info, warn, error, off).
void init_logging();

}  // namespace seqmod
