#include "holdref/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>

#include "holdref/error.hpp"
#include "holdref/hermite_hadamard.hpp"
#include "holdref/holder.hpp"

namespace holdref::cli {

namespace {

std::string format_number(const std::optional<double>& v, int digits) {
  if (!v) return {};
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, *v);
  return buf;
}

std::vector<std::string> cells(const ReportRow& r, int digits) {
  return {r.command,
          r.instance_id,
          format_number(r.p, digits),
          format_number(r.q, digits),
          format_number(r.lhs, digits),
          format_number(r.refined, digits),
          format_number(r.classical, digits),
          format_number(r.slack_refined, digits),
          format_number(r.refinement_gap, digits),
          format_number(r.tightness, digits),
          r.pass ? "true" : "false"};
}

nlohmann::json number_or_null(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::JsonLines: return "json-lines";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json-lines" || name == "jsonl") return OutputFormat::JsonLines;
  throw Error(ErrorKind::Config, "unknown output format '" + std::string(name) + "'");
}

void write_rows(std::ostream& os, const std::vector<ReportRow>& rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: {
      os << kCsvHeader << '\n';
      for (const auto& r : rows) {
        const auto c = cells(r, 17);
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << '\n';
      }
      break;
    }
    case OutputFormat::Table: {
      const std::vector<std::string> header{"command", "instance_id", "p",
                                            "q",       "lhs",         "refined",
                                            "classical", "slack_refined", "refinement_gap",
                                            "tightness", "pass"};
      std::vector<std::vector<std::string>> table{header};
      for (const auto& r : rows) table.push_back(cells(r, 6));
      std::vector<std::size_t> width(header.size(), 0);
      for (const auto& line : table)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
      for (const auto& line : table) {
        for (std::size_t i = 0; i < line.size(); ++i) {
          if (i) os << "  ";
          os << std::left << std::setw(static_cast<int>(width[i])) << line[i];
        }
        os << '\n';
      }
      break;
    }
    case OutputFormat::JsonLines: {
      for (const auto& r : rows) {
        nlohmann::json j = {
            {"command", r.command},
            {"instance_id", r.instance_id},
            {"p", number_or_null(r.p)},
            {"q", number_or_null(r.q)},
            {"lhs", number_or_null(r.lhs)},
            {"refined", number_or_null(r.refined)},
            {"classical", number_or_null(r.classical)},
            {"slack_refined", number_or_null(r.slack_refined)},
            {"refinement_gap", number_or_null(r.refinement_gap)},
            {"tightness", number_or_null(r.tightness)},
            {"pass", r.pass},
        };
        for (const auto& [key, value] : r.extra.items()) j[key] = value;
        os << j.dump() << '\n';
      }
      break;
    }
  }
}

ReportRow parse_csv_row(std::string_view line) {
  std::vector<std::string> fields{""};
  for (char c : line) {
    if (c == ',')
      fields.emplace_back();
    else if (c != '\n' && c != '\r')
      fields.back() += c;
  }
  if (fields.size() != 11)
    throw Error(ErrorKind::Config, "CSV row needs 11 fields, got " + std::to_string(fields.size()));
  ReportRow r;
  r.command = fields[0];
  r.instance_id = fields[1];
  r.p = parse_cell(fields[2]);
  r.q = parse_cell(fields[3]);
  r.lhs = parse_cell(fields[4]);
  r.refined = parse_cell(fields[5]);
  r.classical = parse_cell(fields[6]);
  r.slack_refined = parse_cell(fields[7]);
  r.refinement_gap = parse_cell(fields[8]);
  r.tightness = parse_cell(fields[9]);
  r.pass = fields[10] == "true";
  return r;
}

bool recheck(const ReportRow& row) {
  if (row.command == "fuzz") return row.slack_refined && *row.slack_refined >= -kChainTolerance;
  if (row.command == "moment")
    return row.refinement_gap && row.slack_refined && std::fabs(*row.refinement_gap) <= 1e-8 &&
           *row.slack_refined <= 1e-10;
  if (!row.lhs || !row.refined || !row.classical) return false;
  const double lhs = *row.lhs, refined = *row.refined, classical = *row.classical;
  if (row.command == "hh") {
    const double tol = kCornerAbsTolerance + kChainTolerance * std::fabs(classical);
    return lhs <= refined + tol && refined <= classical + tol;
  }
  const double scale = std::max({std::fabs(lhs), std::fabs(refined), std::fabs(classical)});
  if (scale == 0.0) return true;
  if (row.p && *row.p < 1.0) return (lhs - classical) / scale >= -kChainTolerance;
  return std::min(refined - lhs, classical - refined) / scale >= -kChainTolerance;
}

}  // namespace holdref::cli
