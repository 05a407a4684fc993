#include "holdref/cli/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "holdref/error.hpp"
#include "holdref/functional.hpp"
#include "holdref/hermite_hadamard.hpp"
#include "holdref/holder.hpp"
#include "holdref/partition.hpp"
#include "holdref/search.hpp"

namespace holdref::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field))
    config_error(std::string("missing required field '") + field + "'");
  return j.at(field);
}

double require_number(const json& j, const char* field) {
  const json& v = require(j, field);
  if (!v.is_number()) config_error(std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

template <class T>
T optional_value(const json& j, const char* field, T fallback) {
  if (!j.contains(field)) return fallback;
  try {
    return j.at(field).get<T>();
  } catch (const json::exception&) {
    config_error(std::string("field '") + field + "' has the wrong type");
  }
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Top-level fields act as defaults for every entry of "instances".
std::vector<json> instances_of(const json& doc) {
  json base = doc;
  base.erase("instances");
  std::vector<json> out;
  if (!doc.contains("instances")) {
    if (!base.contains("id")) base["id"] = "1";
    out.push_back(base);
    return out;
  }
  const json& list = doc.at("instances");
  if (!list.is_array() || list.empty()) config_error("field 'instances' must be a non-empty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_object()) config_error("every entry of 'instances' must be an object");
    json merged = base;
    merged.update(list[i]);
    if (!merged.contains("id")) merged["id"] = std::to_string(i + 1);
    out.push_back(std::move(merged));
  }
  return out;
}

std::string id_of(const json& inst) {
  const json& id = inst.at("id");
  return id.is_string() ? id.get<std::string>() : id.dump();
}

Domain parse_domain(const json& j) {
  if (!j.is_object()) config_error("field 'domain' must be an object");
  const std::string kind = optional_value<std::string>(j, "kind", "");
  Domain d;
  if (kind == "range") {
    d = IndexRange1D{static_cast<std::size_t>(require_number(j, "n"))};
  } else if (kind == "grid") {
    d = IndexGrid2D{static_cast<std::size_t>(require_number(j, "n")),
                    static_cast<std::size_t>(require_number(j, "m"))};
  } else if (kind == "interval") {
    d = Interval{require_number(j, "a"), require_number(j, "b")};
  } else if (kind == "rectangle") {
    d = Rectangle{require_number(j, "a"), require_number(j, "b"), require_number(j, "c"),
                  require_number(j, "d")};
  } else {
    config_error("domain kind must be one of range, grid, interval, rectangle");
  }
  try {
    validate(d);
  } catch (const Error& e) {
    config_error(e.what());
  }
  return d;
}

QuadratureRule parse_rule(const json& inst) {
  QuadratureRule rule;
  if (!inst.contains("quadrature")) return rule;
  const json& q = inst.at("quadrature");
  if (!q.is_object()) config_error("field 'quadrature' must be an object");
  try {
    if (q.contains("family")) rule.family = parse_quadrature_family(q.at("family").get<std::string>());
    rule.panels = optional_value<int>(q, "panels", rule.panels);
    rule.nodes_per_panel = optional_value<int>(q, "nodes_per_panel", rule.nodes_per_panel);
    validate(rule);
  } catch (const Error& e) {
    config_error(e.what());
  }
  return rule;
}

FunctionSpec parse_function(const json& inst, const char* field, bool required) {
  if (!inst.contains(field)) {
    if (required) config_error(std::string("missing required field '") + field + "'");
    return FunctionSpec::constant(1.0);
  }
  const json& v = inst.at(field);
  try {
    if (v.is_string()) return FunctionSpec::parse(v.get<std::string>());
    if (v.is_number()) return FunctionSpec::constant(v.get<double>());
    if (v.is_array()) return FunctionSpec::samples(v.get<std::vector<double>>());
  } catch (const ParseError& e) {
    config_error(std::string("field '") + field + "': " + e.what());
  } catch (const json::exception&) {
  }
  config_error(std::string("field '") + field + "' must be an expression string or number array");
}

ConjugateExponents parse_exponents(const json& inst) {
  const double p = require_number(inst, "p");
  try {
    return ConjugateExponents::from_p(p);
  } catch (const Error& e) {
    config_error(std::string("field 'p': ") + e.what());
  }
}

Functional parse_functional(const json& inst, const Domain& domain) {
  try {
    if (is_discrete(domain))
      return Functional::discrete_sum(domain,
                                      optional_value<std::vector<double>>(inst, "weights", {}));
    if (const auto* iv = std::get_if<Interval>(&domain))
      return Functional::integral(*iv, parse_rule(inst));
    return Functional::integral(std::get<Rectangle>(domain), parse_rule(inst));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    config_error(e.what());
  }
}

Partition parse_partition(const json& j, const Domain& domain) {
  if (!j.is_object()) config_error("field 'partition' must be an object");
  try {
    if (j.contains("members")) {
      std::vector<FunctionSpec> members;
      for (const json& m : j.at("members")) {
        json holder = {{"member", m}};
        members.push_back(parse_function(holder, "member", true));
      }
      return Partition::from_members(domain, std::move(members));
    }
    const auto kind = parse_partition_kind(require(j, "kind").get<std::string>());
    std::optional<int> m;
    if (j.contains("m")) m = j.at("m").get<int>();
    return Partition::make(kind, domain, m);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    config_error(std::string("field 'partition': ") + e.what());
  } catch (const json::exception& e) {
    config_error(std::string("field 'partition': ") + e.what());
  }
}

struct HolderJob {
  std::string id;
  Functional functional;
  FunctionSpec w, f, g;
  ConjugateExponents exps;
  std::optional<Partition> partition;
};

HolderJob parse_holder_job(const json& inst, bool partition_required) {
  const Domain domain = parse_domain(require(inst, "domain"));
  HolderJob job{id_of(inst),
                parse_functional(inst, domain),
                parse_function(inst, "w", false),
                parse_function(inst, "f", true),
                parse_function(inst, "g", true),
                parse_exponents(inst),
                std::nullopt};
  for (const FunctionSpec* spec : {&job.w, &job.f, &job.g}) {
    try {
      spec->check_compatible(domain);
    } catch (const Error& e) {
      config_error(e.what());
    }
  }
  if (inst.contains("partition")) job.partition = parse_partition(inst.at("partition"), domain);
  if (partition_required && !job.partition) config_error("missing required field 'partition'");
  if (job.partition && job.exps.regime() == Regime::Reversed)
    config_error("field 'partition': the refined bound needs p > 1");
  return job;
}

ReportRow row_from_bound(const char* command, const std::string& id, const BoundReport& r,
                         bool pass) {
  ReportRow row;
  row.command = command;
  row.instance_id = id;
  row.p = r.p;
  row.q = r.q;
  row.lhs = r.lhs;
  row.refined = r.refined;
  row.classical = r.classical;
  row.slack_refined = r.slack_refined;
  row.refinement_gap = r.refinement_gap;
  row.tightness = r.tightness;
  row.pass = pass;
  row.extra["regime"] = std::string(to_string(r.regime));
  row.extra["terms"] = r.terms;
  return row;
}

ReportRow diagnostic_row(Command c, const std::string& id, const Error& e) {
  ReportRow row;
  row.command = std::string(to_string(c));
  row.instance_id = id;
  row.pass = false;
  row.extra["error"] = e.what();
  row.extra["error_kind"] = to_string(e.kind());
  return row;
}

void run_holder(const RunConfig& cfg, RunResult& result) {
  const bool chain = cfg.command == Command::Chain;
  std::vector<HolderJob> jobs;
  for (const json& inst : instances_of(cfg.document)) jobs.push_back(parse_holder_job(inst, chain));
  for (const auto& job : jobs) {
    try {
      if (chain) {
        const ChainReport c = verify_chain(job.functional, job.w, job.f, job.g, job.exps,
                                           *job.partition);
        ReportRow row = row_from_bound("chain", job.id, c.bound, c.pass);
        row.extra["min_slack"] = c.min_slack;
        row.extra["tolerance"] = c.tolerance;
        row.extra["partition"] = std::string(to_string(job.partition->kind()));
        result.rows.push_back(std::move(row));
      } else if (job.exps.regime() == Regime::Reversed) {
        const BoundReport r = reversed_holder(job.functional, job.w, job.f, job.g, job.exps);
        const double scale = std::max(std::fabs(r.lhs), std::fabs(r.classical));
        const bool pass = scale == 0.0 || (r.lhs - r.classical) / scale >= -kChainTolerance;
        result.rows.push_back(row_from_bound("bound", job.id, r, pass));
      } else {
        const BoundReport r =
            job.partition
                ? improved_holder(job.functional, job.w, job.f, job.g, job.exps, *job.partition)
                : classical_holder(job.functional, job.w, job.f, job.g, job.exps);
        result.rows.push_back(row_from_bound("bound", job.id, r, chain_from_report(r).pass));
      }
    } catch (const Error& e) {
      result.rows.push_back(diagnostic_row(cfg.command, job.id, e));
      result.diagnostics += job.id + ": " + e.what() + "\n";
    }
  }
}

void run_hh(const RunConfig& cfg, RunResult& result) {
  struct Job {
    std::string id;
    CornerContext ctx;
    double identity_tol;
  };
  std::vector<Job> jobs;
  for (const json& inst : instances_of(cfg.document)) {
    Domain d = inst.contains("rect") ? parse_domain([&] {
      json r = inst.at("rect");
      r["kind"] = "rectangle";
      return r;
    }())
                                     : parse_domain(require(inst, "domain"));
    if (!std::holds_alternative<Rectangle>(d)) config_error("hh needs a rectangle domain");
    CornerContext ctx{std::get<Rectangle>(d), parse_function(inst, "f", true),
                      parse_function(inst, "f_st", true), parse_exponents(inst), parse_rule(inst),
                      MeanSign::Corrected};
    if (ctx.exps.regime() != Regime::Standard) config_error("field 'p': hh needs p > 1");
    if (!ctx.f.is_expression() || !ctx.f_st.is_expression() || ctx.f.expression().arity() > 2 ||
        ctx.f_st.expression().arity() > 2)
      config_error("hh needs f and f_st as expressions in x, y");
    if (cfg.paper_verbatim_sign || optional_value<bool>(inst, "paper_verbatim_sign", false))
      ctx.sign = MeanSign::Verbatim;
    jobs.push_back({id_of(inst), std::move(ctx),
                    optional_value<double>(inst, "identity_tolerance", 1e-8)});
  }
  for (const auto& job : jobs) {
    try {
      const CornerBounds b = compare_corner_bounds(job.ctx);
      const LeftSide left = hh_left_side(job.ctx);
      const IdentityCheck id = verify_hh_identity(job.ctx, job.identity_tol);
      ReportRow row;
      row.command = "hh";
      row.instance_id = job.id;
      row.p = job.ctx.exps.p();
      row.q = job.ctx.exps.q();
      row.lhs = b.lhs_abs;
      row.refined = b.bound_improved;
      row.classical = b.bound_classical;
      row.slack_refined = b.bound_improved - b.lhs_abs;
      row.refinement_gap = b.bound_classical - b.bound_improved;
      if (b.bound_classical > 0.0) row.tightness = b.bound_improved / b.bound_classical;
      row.pass = b.pass;
      row.extra["sign"] = job.ctx.sign == MeanSign::Corrected ? "corrected" : "paper-verbatim";
      row.extra["corner_average"] = left.corner_average;
      row.extra["mean"] = left.mean;
      row.extra["edge_term"] = left.edge_term;
      row.extra["kernel_rhs"] = id.right;
      row.extra["identity_residual"] = id.residual;
      row.extra["identity_pass"] = id.pass;
      row.extra["kernel_abs"] = b.kernel_abs;
      row.extra["holder_refined"] = b.holder_refined;
      row.extra["brackets"] = b.brackets;
      result.rows.push_back(std::move(row));
    } catch (const Error& e) {
      result.rows.push_back(diagnostic_row(cfg.command, job.id, e));
      result.diagnostics += job.id + ": " + e.what() + "\n";
    }
  }
}

void run_moment(const RunConfig& cfg, RunResult& result) {
  for (const json& inst : instances_of(cfg.document)) {
    std::vector<double> ps;
    if (inst.contains("p_values")) {
      ps = optional_value<std::vector<double>>(inst, "p_values", {});
      if (ps.empty()) config_error("field 'p_values' must be a non-empty number array");
    } else {
      ps.push_back(require_number(inst, "p"));
    }
    const QuadratureRule rule = parse_rule(inst);
    for (double p : ps) {
      if (!(p > 0.0)) config_error("field 'p': kernel moment needs p > 0");
      const std::string id = inst.contains("p_values") ? "p=" + format17(p) : id_of(inst);
      try {
        const KernelMoment m = kernel_moment(p, rule);
        ReportRow row;
        row.command = "moment";
        row.instance_id = id;
        row.p = p;
        if (p != 1.0) row.q = conjugate_of(p);
        row.lhs = m.value;
        row.refined = m.value;
        row.classical = m.closed_form;
        row.slack_refined = m.max_spread;
        row.refinement_gap = m.closed_form - m.value;
        row.tightness = m.value / m.closed_form;
        row.pass = std::fabs(m.closed_form - m.value) <= 1e-8 && m.max_spread <= 1e-10;
        row.extra["placements"] = m.placements;
        result.rows.push_back(std::move(row));
      } catch (const Error& e) {
        result.rows.push_back(diagnostic_row(cfg.command, id, e));
        result.diagnostics += id + ": " + e.what() + "\n";
      }
    }
  }
}

void run_fuzz(const RunConfig& cfg, RunResult& result) {
  for (const json& inst : instances_of(cfg.document)) {
    std::vector<std::string> cases;
    if (inst.contains("cases"))
      cases = optional_value<std::vector<std::string>>(inst, "cases", {});
    else
      cases.push_back(require(inst, "case").get<std::string>());
    if (cases.empty()) config_error("field 'cases' must be a non-empty array");

    for (const auto& name : cases) {
      FuzzConfig fc;
      try {
        fc.fuzz_case = parse_fuzz_case(name);
      } catch (const Error& e) {
        config_error(e.what());
      }
      fc.seed = cfg.seed ? *cfg.seed : optional_value<std::uint64_t>(inst, "seed", 0);
      fc.trials = optional_value<std::uint64_t>(inst, "trials", fc.trials);
      fc.n_min = optional_value<std::size_t>(inst, "n_min", fc.n_min);
      fc.n_max = optional_value<std::size_t>(inst, "n_max", fc.n_max);
      fc.m_min = optional_value<std::size_t>(inst, "m_min", fc.m_min);
      fc.m_max = optional_value<std::size_t>(inst, "m_max", fc.m_max);
      fc.p_min = optional_value<double>(inst, "p_min", fc.p_min);
      fc.p_max = optional_value<double>(inst, "p_max", fc.p_max);
      fc.value_min = optional_value<double>(inst, "value_min", fc.value_min);
      fc.value_max = optional_value<double>(inst, "value_max", fc.value_max);
      fc.relative_tolerance = optional_value<double>(inst, "relative_tolerance", fc.relative_tolerance);
      if (inst.contains("quadrature")) fc.rule = parse_rule(inst);
      try {
        fc = normalized(fc);
      } catch (const Error& e) {
        config_error(e.what());
      }
      const FuzzSummary s = fuzz_chain(fc);
      ReportRow row;
      row.command = "fuzz";
      row.instance_id = name;
      row.slack_refined = s.min_relative_slack;
      if (s.tightness.count > 0) row.tightness = s.tightness.mean;
      row.pass = s.violations == 0;
      row.extra["summary"] = json::parse(s.to_json());
      result.rows.push_back(std::move(row));
      if (s.violations > 0)
        result.diagnostics += name + ": " + std::to_string(s.violations) + " violations\n";
    }
  }
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Bound: return "bound";
    case Command::Chain: return "chain";
    case Command::Hh: return "hh";
    case Command::Moment: return "moment";
    case Command::Fuzz: return "fuzz";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::Bound, Command::Chain, Command::Hh, Command::Moment, Command::Fuzz})
    if (to_string(c) == name) return c;
  config_error("unknown command '" + std::string(name) + "'");
}

RunConfig make_run_config(Command command, json document) {
  if (!document.is_object()) config_error("config must be a JSON object");
  const json& version = require(document, "version");
  if (!version.is_number_integer() || version.get<int>() != kSupportedConfigVersion)
    config_error("field 'version' must be " + std::to_string(kSupportedConfigVersion));
  if (document.contains("command") &&
      document.at("command") != json(std::string(to_string(command))))
    config_error("field 'command' does not match the requested command '" +
                 std::string(to_string(command)) + "'");
  RunConfig cfg;
  cfg.command = command;
  if (document.contains("format"))
    cfg.format = parse_output_format(optional_value<std::string>(document, "format", "csv"));
  cfg.out_path = optional_value<std::string>(document, "out", "");
  cfg.document = std::move(document);
  return cfg;
}

RunConfig load_run_config(Command command, const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    config_error("config '" + path + "' is not valid JSON: " + e.what());
  }
  return make_run_config(command, std::move(doc));
}

RunResult execute(const RunConfig& cfg) {
  RunResult result;
  try {
    switch (cfg.command) {
      case Command::Bound:
      case Command::Chain: run_holder(cfg, result); break;
      case Command::Hh: run_hh(cfg, result); break;
      case Command::Moment: run_moment(cfg, result); break;
      case Command::Fuzz: run_fuzz(cfg, result); break;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Config) throw;
    result.rows.clear();
    result.exit_code = 2;
    result.diagnostics = std::string("config error: ") + e.what() + "\n";
    return result;
  } catch (const json::exception& e) {
    result.rows.clear();
    result.exit_code = 2;
    result.diagnostics = std::string("config error: ") + e.what() + "\n";
    return result;
  }
  for (const auto& row : result.rows)
    if (!row.pass) result.exit_code = 1;
  return result;
}

int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const RunResult result = execute(cfg);
  err << result.diagnostics;
  if (result.exit_code == 2) return 2;
  if (cfg.out_path.empty()) {
    write_rows(out, result.rows, cfg.format);
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "config error: cannot write '" << cfg.out_path << "'\n";
      return 2;
    }
    write_rows(file, result.rows, cfg.format);
  }
  return result.exit_code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical and refined Hoelder bounds for isotonic linear functionals"};
  app.require_subcommand(1);
  std::string config_path, out_path, format;
  std::optional<std::uint64_t> seed;
  bool verbatim = false;

  for (auto c : {Command::Bound, Command::Chain, Command::Hh, Command::Moment, Command::Fuzz}) {
    auto* sub = app.add_subcommand(std::string(to_string(c)));
    sub->add_option("--config", config_path, "JSON run description")->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "table | csv | json-lines")
        ->check(CLI::IsMember({"table", "csv", "json-lines"}));
    sub->add_option("--seed", seed, "override the fuzz seed");
    sub->add_flag("--paper-verbatim-sign", verbatim,
                  "use corner/4 - mean - edge in the rectangle identity");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    const Command command = parse_command(app.get_subcommands().front()->get_name());
    RunConfig cfg = load_run_config(command, config_path);
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!format.empty()) cfg.format = parse_output_format(format);
    cfg.seed = seed;
    cfg.paper_verbatim_sign = verbatim;
    return run_config(cfg, out, err);
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::Config ? 2 : 1;
  }
}

}  // namespace holdref::cli
