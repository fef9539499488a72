#include "msq/report.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "msq/error.hpp"

namespace msq {

namespace {

using nlohmann::ordered_json;

/// Cell rendering shared by tsv and text: strings stay raw, every other
/// value keeps its JSON spelling.
auto cell_text(const ordered_json& value) -> std::string {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

auto is_tabular(const Report& report) -> bool {
  return report.results.contains("columns") && report.results.contains("rows");
}

auto format_elapsed(double elapsed_ms) -> std::string {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3f", elapsed_ms);
  return buffer;
}

auto render_json(const Report& report) -> std::string {
  ordered_json j;
  j["command"] = report.command;
  j["parameters"] = report.parameters;
  j["results"] = report.results;
  j["elapsed_ms"] = report.elapsed_ms;
  return j.dump(2) + "\n";
}

auto render_tsv(const Report& report) -> std::string {
  if (!is_tabular(report)) {
    throw_usage("tsv output is only available for tabular commands");
  }
  std::string out;
  const ordered_json& columns = report.results.at("columns");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out += '\t';
    out += cell_text(columns[i]);
  }
  out += '\n';
  for (const ordered_json& row : report.results.at("rows")) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += '\t';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

auto render_aligned_table(const ordered_json& columns, const ordered_json& rows)
    -> std::string {
  std::vector<std::size_t> widths;
  widths.reserve(columns.size());
  for (const ordered_json& column : columns) {
    widths.push_back(cell_text(column).size());
  }
  for (const ordered_json& row : rows) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
      widths[i] = std::max(widths[i], cell_text(row[i]).size());
    }
  }
  auto emit_row = [&](const ordered_json& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string cell = cell_text(cells[i]);
      if (i + 1 < cells.size() && i < widths.size()) {
        cell.resize(widths[i], ' ');
        line += cell + "  ";
      } else {
        line += cell;
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + "\n";
  };
  std::string out = emit_row(columns);
  for (const ordered_json& row : rows) out += emit_row(row);
  return out;
}

auto render_text(const Report& report) -> std::string {
  std::string out = "command: " + report.command + "\n";
  for (const auto& [key, value] : report.parameters.items()) {
    out += key + ": " + cell_text(value) + "\n";
  }
  for (const auto& [key, value] : report.results.items()) {
    if (key == "columns") continue;
    if (key == "rows" && is_tabular(report)) {
      out += render_aligned_table(report.results.at("columns"), value);
      continue;
    }
    out += key + ": " + cell_text(value) + "\n";
  }
  out += "elapsed_ms: " + format_elapsed(report.elapsed_ms) + "\n";
  return out;
}

}  // namespace

auto parse_format(const std::string& name) -> ReportFormat {
  if (name == "json") return ReportFormat::json;
  if (name == "tsv") return ReportFormat::tsv;
  if (name == "text") return ReportFormat::text;
  throw_usage("unknown format '" + name + "' (expected json, tsv, or text)");
}

auto render(const Report& report, ReportFormat format) -> std::string {
  switch (format) {
    case ReportFormat::json:
      return render_json(report);
    case ReportFormat::tsv:
      return render_tsv(report);
    case ReportFormat::text:
      return render_text(report);
  }
  throw_usage("unknown report format");
}

}  // namespace msq
