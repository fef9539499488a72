#pragma once

#include <string>

#include <json.hpp>

namespace msq {

/// Output format for a rendered report.
enum class ReportFormat { json, tsv, text };

/// Machine-readable record of one CLI invocation: which subcommand ran, the
/// parameters it resolved (defaults filled in), and what it produced. Field
/// names are stable; two runs with identical inputs produce identical
/// reports except for `elapsed_ms`.
struct Report {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  double elapsed_ms = 0.0;
};

/// Parses a format name; anything outside {json, tsv, text} is a usage
/// error.
auto parse_format(const std::string& name) -> ReportFormat;

/// Renders the report. json is lossless; tsv requires tabular results
/// (a `columns` list plus `rows`) and is a usage error otherwise; text is a
/// human-readable key/value listing that spells out pattern strings.
auto render(const Report& report, ReportFormat format) -> std::string;

}  // namespace msq
