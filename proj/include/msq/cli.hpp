#pragma once

#include <string>
#include <vector>

#include "msq/report.hpp"

namespace msq {

/// Outcome of one dispatched invocation: the process exit code, the report
/// (meaningful on success), the rendered stdout payload, and any stderr
/// diagnostic.
struct DispatchResult {
  int exit_code = 0;
  Report report;
  std::string output;
  std::string error;
};

/// Runs one subcommand from argv-style arguments (program name excluded).
/// On success the report is rendered in the requested format into `output`;
/// failures land in `error` with the exit code of their category: domain 1,
/// usage 2, resource 3.
auto dispatch(const std::vector<std::string>& args) -> DispatchResult;

/// main()-shaped wrapper: dispatches, prints `output` to stdout and `error`
/// to stderr, and returns the exit code.
auto run_cli(int argc, const char* const* argv) -> int;

}  // namespace msq
