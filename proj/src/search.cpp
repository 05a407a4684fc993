#include "holdref/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>

#include <json.hpp>

#include "holdref/error.hpp"
#include "holdref/hermite_hadamard.hpp"

namespace holdref {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<FuzzCase, std::string_view>, 6> kCaseNames{{
    {FuzzCase::Discrete1D, "discrete-1d"},
    {FuzzCase::Discrete2D, "discrete-2d"},
    {FuzzCase::Integral1D, "integral-1d"},
    {FuzzCase::Integral2D, "integral-2d"},
    {FuzzCase::CornerBounds, "corner-bounds"},
    {FuzzCase::Reversed1D, "reversed-1d"},
}};

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    gen_.seed(seq);
  }

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(gen_() % (hi - lo + 1));
  }
  std::vector<double> values(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = log_uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.17g)", v);
  return buf;
}

/// Piecewise-linear interpolant through random knots, written as
/// v0 + s0 (t - a) + sum_j c_j relu(t - k_j) with relu(u) = (u + |u|)/2.
std::string piecewise_linear(TrialRng& rng, const FuzzConfig& cfg, double a, double b,
                             const char* var) {
  const std::size_t knots = rng.integer(2, 8);
  std::vector<double> xs{a, b};
  for (std::size_t i = 2; i < knots; ++i) xs.push_back(rng.uniform(a, b));
  std::sort(xs.begin(), xs.end());
  const auto ys = rng.values(xs.size(), cfg.value_min, cfg.value_max);

  std::vector<double> slopes;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double dx = xs[i + 1] - xs[i];
    slopes.push_back(dx > 0.0 ? (ys[i + 1] - ys[i]) / dx : 0.0);
  }
  const std::string v(var);
  std::string text = num(ys[0]) + " + " + num(slopes[0]) + "*(" + v + " - " + num(a) + ")";
  for (std::size_t j = 1; j < slopes.size(); ++j) {
    const double change = slopes[j] - slopes[j - 1];
    if (change == 0.0) continue;
    const std::string u = "(" + v + " - " + num(xs[j]) + ")";
    text += " + " + num(change / 2.0) + "*(" + u + " + abs" + u + ")";
  }
  return text;
}

std::vector<double> normalize_columns(std::vector<std::vector<double>>& raw) {
  const std::size_t n = raw.front().size();
  std::vector<double> sums(n, 0.0);
  for (const auto& member : raw)
    for (std::size_t i = 0; i < n; ++i) sums[i] += member[i];
  for (auto& member : raw)
    for (std::size_t i = 0; i < n; ++i) member[i] /= sums[i];
  return sums;
}

Partition random_sample_partition(TrialRng& rng, const Domain& domain) {
  const std::size_t m = rng.integer(1, 6);
  const std::size_t n = discrete_size(domain);
  std::vector<std::vector<double>> raw;
  for (std::size_t i = 0; i < m; ++i) raw.push_back(rng.values(n, 1e-3, 1.0));
  normalize_columns(raw);
  std::vector<FunctionSpec> members;
  for (auto& r : raw) members.push_back(FunctionSpec::samples(std::move(r)));
  return Partition::from_members(domain, std::move(members));
}

json partition_json(const Partition& part) {
  json members = json::array();
  for (const auto& f : part.members()) members.push_back(f.to_string());
  return {{"kind", std::string(to_string(part.kind()))}, {"members", members}};
}

json spec_json(const FunctionSpec& f) {
  if (f.is_expression()) return f.to_string();
  return f.sampled().values;
}

struct Outcome {
  double slack = 0.0;
  std::optional<double> tightness;
  json instance;
};

Outcome chain_outcome(const FuzzConfig& cfg, const Functional& A, const FunctionSpec& w,
                      const FunctionSpec& f, const FunctionSpec& g, const ConjugateExponents& e,
                      const Partition& part, json instance) {
  instance["p"] = e.p();
  instance["w"] = spec_json(w);
  instance["f"] = spec_json(f);
  instance["g"] = spec_json(g);
  instance["partition"] = partition_json(part);
  const ChainReport c = chain_from_report(improved_holder(A, w, f, g, e, part),
                                          cfg.relative_tolerance);
  return {c.min_slack, c.bound.tightness, std::move(instance)};
}

Outcome discrete_trial(const FuzzConfig& cfg, TrialRng& rng, bool two_d) {
  Domain domain;
  json instance;
  if (two_d) {
    const std::size_t n = rng.integer(cfg.n_min, cfg.n_max);
    const std::size_t m = rng.integer(cfg.m_min, cfg.m_max);
    domain = IndexGrid2D{n, m};
    instance["domain"] = {{"kind", "grid"}, {"n", n}, {"m", m}};
  } else {
    const std::size_t n = rng.integer(cfg.n_min, cfg.n_max);
    domain = IndexRange1D{n};
    instance["domain"] = {{"kind", "range"}, {"n", n}};
  }
  const std::size_t size = discrete_size(domain);
  const auto exps = ConjugateExponents::from_p(rng.uniform(cfg.p_min, cfg.p_max));
  std::vector<double> weights;
  if (rng.integer(0, 3) != 0) weights = rng.values(size, cfg.value_min, cfg.value_max);
  instance["weights"] = weights;
  const Functional A = Functional::discrete_sum(domain, weights);
  const FunctionSpec w = rng.integer(0, 1) == 0
                             ? FunctionSpec::constant(1.0)
                             : FunctionSpec::samples(rng.values(size, cfg.value_min, cfg.value_max));
  const FunctionSpec f = FunctionSpec::samples(rng.values(size, cfg.value_min, cfg.value_max));
  const FunctionSpec g = FunctionSpec::samples(rng.values(size, cfg.value_min, cfg.value_max));

  const std::size_t choice = rng.integer(0, 2);
  const Partition part =
      choice == 0 ? Partition::make(two_d ? PartitionKind::DiscreteBilinearQuad
                                          : PartitionKind::DiscretePair,
                                    domain)
      : choice == 1 ? Partition::make(PartitionKind::Uniform, domain,
                                      static_cast<int>(rng.integer(1, 5)))
                    : random_sample_partition(rng, domain);
  return chain_outcome(cfg, A, w, f, g, exps, part, std::move(instance));
}

Outcome integral_trial(const FuzzConfig& cfg, TrialRng& rng, bool two_d) {
  auto side = [&] {
    const double a = rng.uniform(-2.0, 2.0);
    return std::pair{a, a + rng.uniform(0.1, 3.0)};
  };
  const auto exps = ConjugateExponents::from_p(rng.uniform(cfg.p_min, cfg.p_max));
  json instance;
  if (!two_d) {
    const auto [a, b] = side();
    const Interval iv{a, b};
    instance["domain"] = {{"kind", "interval"}, {"a", a}, {"b", b}};
    const Functional A = Functional::integral(iv, cfg.rule);
    const FunctionSpec w = rng.integer(0, 1) == 0
                               ? FunctionSpec::constant(1.0)
                               : FunctionSpec::parse(piecewise_linear(rng, cfg, a, b, "t"));
    const FunctionSpec f = FunctionSpec::parse(piecewise_linear(rng, cfg, a, b, "t"));
    const FunctionSpec g = FunctionSpec::parse(piecewise_linear(rng, cfg, a, b, "t"));
    const Partition part = rng.integer(0, 1) == 0
                               ? Partition::make(PartitionKind::LinearPair, iv)
                               : Partition::make(PartitionKind::Uniform, iv,
                                                 static_cast<int>(rng.integer(1, 5)));
    return chain_outcome(cfg, A, w, f, g, exps, part, std::move(instance));
  }
  const auto [a, b] = side();
  const auto [c, d] = side();
  const Rectangle rect{a, b, c, d};
  instance["domain"] = {{"kind", "rectangle"}, {"a", a}, {"b", b}, {"c", c}, {"d", d}};
  const Functional A = Functional::integral(rect, cfg.rule);
  auto product = [&] {
    return FunctionSpec::parse("(" + piecewise_linear(rng, cfg, a, b, "x") + ")*(" +
                               piecewise_linear(rng, cfg, c, d, "y") + ")");
  };
  const FunctionSpec w = rng.integer(0, 1) == 0 ? FunctionSpec::constant(1.0) : product();
  const FunctionSpec f = product();
  const FunctionSpec g = product();
  const Partition part = rng.integer(0, 1) == 0
                             ? Partition::make(PartitionKind::BilinearQuad, rect)
                             : Partition::make(PartitionKind::Uniform, rect,
                                               static_cast<int>(rng.integer(1, 5)));
  return chain_outcome(cfg, A, w, f, g, exps, part, std::move(instance));
}

Outcome corner_trial(const FuzzConfig& cfg, TrialRng& rng) {
  const double a = rng.uniform(-2.0, 2.0);
  const double b = a + rng.uniform(0.1, 3.0);
  const double c = rng.uniform(-2.0, 2.0);
  const double d = c + rng.uniform(0.1, 3.0);
  const Rectangle rect{a, b, c, d};
  const auto exps = ConjugateExponents::from_p(rng.uniform(cfg.p_min, cfg.p_max));
  Corners corners{};
  for (double& v : corners) v = rng.uniform(0.0, cfg.value_max);
  const double classical = corner_bound_classical(rect, corners, exps);
  const double improved = corner_bound_improved(rect, corners, exps).bound;
  Outcome out;
  out.instance = {{"domain", {{"kind", "rectangle"}, {"a", a}, {"b", b}, {"c", c}, {"d", d}}},
                  {"p", exps.p()},
                  {"corners", corners}};
  out.slack = classical > 0.0 ? (classical - improved) / classical : 0.0;
  if (classical > 0.0) out.tightness = improved / classical;
  return out;
}

Outcome reversed_trial(const FuzzConfig& cfg, TrialRng& rng) {
  const std::size_t n = rng.integer(cfg.n_min, cfg.n_max);
  const Domain domain = IndexRange1D{n};
  const auto exps = ConjugateExponents::from_p(rng.uniform(cfg.p_min, cfg.p_max));
  std::vector<double> weights;
  if (rng.integer(0, 3) != 0) weights = rng.values(n, cfg.value_min, cfg.value_max);
  const Functional A = Functional::discrete_sum(domain, weights);
  const FunctionSpec f = FunctionSpec::samples(rng.values(n, cfg.value_min, cfg.value_max));
  const FunctionSpec g = FunctionSpec::samples(rng.values(n, cfg.value_min, cfg.value_max));
  const BoundReport r = reversed_holder(A, FunctionSpec::constant(1.0), f, g, exps);
  Outcome out;
  out.instance = {{"domain", {{"kind", "range"}, {"n", n}}},
                  {"weights", weights},
                  {"p", exps.p()},
                  {"f", spec_json(f)},
                  {"g", spec_json(g)}};
  const double scale = std::max(std::fabs(r.lhs), std::fabs(r.classical));
  out.slack = scale > 0.0 ? (r.lhs - r.classical) / scale : 0.0;
  if (r.lhs > 0.0) out.tightness = r.classical / r.lhs;
  return out;
}

Outcome run_trial(const FuzzConfig& cfg, std::uint64_t trial) {
  TrialRng rng(cfg.seed, trial);
  switch (cfg.fuzz_case) {
    case FuzzCase::Discrete1D: return discrete_trial(cfg, rng, false);
    case FuzzCase::Discrete2D: return discrete_trial(cfg, rng, true);
    case FuzzCase::Integral1D: return integral_trial(cfg, rng, false);
    case FuzzCase::Integral2D: return integral_trial(cfg, rng, true);
    case FuzzCase::CornerBounds: return corner_trial(cfg, rng);
    case FuzzCase::Reversed1D: return reversed_trial(cfg, rng);
  }
  return {};
}

}  // namespace

std::string_view to_string(FuzzCase c) noexcept {
  for (const auto& [k, name] : kCaseNames)
    if (k == c) return name;
  return "?";
}

FuzzCase parse_fuzz_case(std::string_view name) {
  for (const auto& [k, n] : kCaseNames)
    if (n == name) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown fuzz case '" + std::string(name) + "'");
}

FuzzConfig normalized(FuzzConfig cfg) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidArgument, what); };
  const bool reversed = cfg.fuzz_case == FuzzCase::Reversed1D;
  if (reversed && cfg.p_min == FuzzConfig{}.p_min && cfg.p_max == FuzzConfig{}.p_max) {
    cfg.p_min = 0.1;
    cfg.p_max = 0.9;
  }
  if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) fail("fuzz needs 1 <= n_min <= n_max");
  if (cfg.m_min < 1 || cfg.m_min > cfg.m_max) fail("fuzz needs 1 <= m_min <= m_max");
  if (!(cfg.p_min <= cfg.p_max)) fail("fuzz needs p_min <= p_max");
  const double gap = ConjugateExponents::kMinDistanceFromOne;
  if (reversed) {
    if (!(cfg.p_min > 0.0 && cfg.p_max <= 1.0 - gap)) fail("reversed case needs p in (0, 1)");
  } else if (!(cfg.p_min >= 1.0 + gap)) {
    fail("fuzz p range must lie in the standard regime p > 1");
  }
  if (!(cfg.value_min > 0.0 && cfg.value_min <= cfg.value_max))
    fail("fuzz needs 0 < value_min <= value_max");
  if (!(cfg.relative_tolerance >= 0.0)) fail("fuzz tolerance must be >= 0");
  validate(cfg.rule);
  return cfg;
}

FuzzSummary fuzz_chain(const FuzzConfig& raw) {
  const FuzzConfig cfg = normalized(raw);
  FuzzSummary s;
  s.fuzz_case = cfg.fuzz_case;
  s.seed = cfg.seed;
  double min_slack = std::numeric_limits<double>::infinity();
  double tight_sum = 0.0;
  s.tightness.min = std::numeric_limits<double>::infinity();
  s.tightness.max = -std::numeric_limits<double>::infinity();

  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    ++s.trials_run;
    Outcome out;
    try {
      out = run_trial(cfg, trial);
    } catch (const Error&) {
      ++s.errors;
      continue;
    }
    if (out.slack < -cfg.relative_tolerance) ++s.violations;
    if (out.slack < min_slack) {
      min_slack = out.slack;
      s.worst_trial = trial;
      s.worst_instance = out.instance.dump();
    }
    if (out.tightness) {
      const double t = *out.tightness;
      ++s.tightness.count;
      tight_sum += t;
      s.tightness.min = std::min(s.tightness.min, t);
      s.tightness.max = std::max(s.tightness.max, t);
    }
  }
  s.min_relative_slack = std::isfinite(min_slack) ? min_slack : 0.0;
  if (s.tightness.count > 0) {
    s.tightness.mean = tight_sum / static_cast<double>(s.tightness.count);
  } else {
    s.tightness = {};
  }
  return s;
}

FuzzSummary tightness_stats(const FuzzConfig& cfg) {
  if (cfg.fuzz_case == FuzzCase::Reversed1D)
    throw Error(ErrorKind::InvalidArgument, "tightness statistics need a standard-regime case");
  return fuzz_chain(cfg);
}

TightnessStats tightness_stats(std::span<const ChainInstance> instances) {
  TightnessStats stats;
  double sum = 0.0;
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -std::numeric_limits<double>::infinity();
  for (const auto& inst : instances) {
    const BoundReport r =
        improved_holder(inst.functional, inst.w, inst.f, inst.g, inst.exps, inst.partition);
    if (!r.tightness) continue;
    ++stats.count;
    sum += *r.tightness;
    stats.min = std::min(stats.min, *r.tightness);
    stats.max = std::max(stats.max, *r.tightness);
  }
  if (stats.count == 0) return {};
  stats.mean = sum / static_cast<double>(stats.count);
  return stats;
}

std::string FuzzSummary::to_json() const {
  json j = {
      {"case", std::string(to_string(fuzz_case))},
      {"seed", seed},
      {"trials_run", trials_run},
      {"violations", violations},
      {"errors", errors},
      {"min_relative_slack", min_relative_slack},
      {"worst_trial", worst_trial},
      {"worst_instance", worst_instance.empty() ? json(nullptr) : json::parse(worst_instance)},
      {"tightness",
       {{"count", tightness.count},
        {"min", tightness.min},
        {"mean", tightness.mean},
        {"max", tightness.max}}},
  };
  return j.dump();
}

}  // namespace holdref
