#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace holdref::cli {

enum class OutputFormat { Table, Csv, JsonLines };

std::string_view to_string(OutputFormat f) noexcept;
OutputFormat parse_output_format(std::string_view name);

/// One line of output. Column meaning per command:
///   bound/chain  lhs, refined and classical Hoelder values
///   hh           |left side|, improved corner bound, classical corner bound
///   moment       quadrature moment (lhs and refined), closed form (classical),
///                placement spread (slack_refined), closed form - quadrature
///                (refinement_gap)
///   fuzz         min relative slack (slack_refined), mean tightness
struct ReportRow {
  std::string command;
  std::string instance_id;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> lhs;
  std::optional<double> refined;
  std::optional<double> classical;
  std::optional<double> slack_refined;
  std::optional<double> refinement_gap;
  std::optional<double> tightness;
  bool pass = false;
  nlohmann::json extra = nlohmann::json::object();  // json-lines only
};

inline constexpr std::string_view kCsvHeader =
    "command,instance_id,p,q,lhs,refined,classical,slack_refined,refinement_gap,tightness,pass";

void write_rows(std::ostream& os, const std::vector<ReportRow>& rows, OutputFormat format);

/// Inverse of the CSV writer for a single data line (extra is left empty).
ReportRow parse_csv_row(std::string_view line);

/// Recomputes the pass verdict from the numeric columns alone.
bool recheck(const ReportRow& row);

}  // namespace holdref::cli
