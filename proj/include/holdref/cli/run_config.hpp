#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holdref/cli/report.hpp"

namespace holdref::cli {

enum class Command { Bound, Chain, Hh, Moment, Fuzz };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view name);

inline constexpr int kSupportedConfigVersion = 1;

/// A parsed run description plus command-line overrides.
struct RunConfig {
  Command command = Command::Chain;
  nlohmann::json document = nlohmann::json::object();
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty: standard output
  std::optional<std::uint64_t> seed;
  bool paper_verbatim_sign = false;
};

/// Reads and validates the JSON document. Throws Error(Config).
RunConfig load_run_config(Command command, const std::string& path);
RunConfig make_run_config(Command command, nlohmann::json document);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 inequality failure or numeric error, 2 config error
  std::vector<ReportRow> rows;
  std::string diagnostics;
};

/// Executes the run and returns the rows without writing them.
RunResult execute(const RunConfig& cfg);

/// Executes and writes the report to cfg.out_path or `out`.
int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: `<command> --config <path> [--out <path>]
/// [--format table|csv|json-lines] [--seed N] [--paper-verbatim-sign]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace holdref::cli
