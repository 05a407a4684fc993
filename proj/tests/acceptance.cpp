// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "holdref/cli/run_config.hpp"
#include "holdref/hermite_hadamard.hpp"
#include "holdref/holder.hpp"
#include "holdref/search.hpp"
#include "oracles.hpp"

using namespace holdref;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool close(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

const FunctionSpec kOne = FunctionSpec::constant(1.0);

void chain_integral() {
  const Interval iv{0, 1};
  const auto c = verify_chain(Functional::integral(iv, QuadratureRule{}), kOne,
                              FunctionSpec::parse("t"), kOne, ConjugateExponents::from_p(2),
                              Partition::make(PartitionKind::LinearPair, iv));
  // exact: sqrt(1/24) + sqrt(1/8) and 1/sqrt(3)
  const double refined_exact = std::sqrt(1.0 / 24.0) + std::sqrt(1.0 / 8.0);
  const bool ok = close(c.lhs, 0.5, 1e-6) && close(c.refined, 0.557678, 1e-6) &&
                  close(c.classical, 0.577350, 1e-6) && close(c.refined, refined_exact, 1e-12) &&
                  close(c.classical, 1.0 / std::sqrt(3.0), 1e-12) && c.lhs <= c.refined &&
                  c.refined <= c.classical;
  report(1, ok, fmt("lhs=%.9f refined=%.9f classical=%.9f", c.lhs, c.refined, c.classical));
}

void chain_sum() {
  const Domain d = IndexRange1D{2};
  const auto r = improved_holder(Functional::discrete_sum(d), kOne, FunctionSpec::samples({1, 2}),
                                 FunctionSpec::samples({1, 1}), ConjugateExponents::from_p(2),
                                 Partition::make(PartitionKind::DiscretePair, d));
  const double refined = (3.0 * std::sqrt(3.0) + 1.0) / 2.0, classical = std::sqrt(10.0);
  const bool ok = close(r.refined, refined, 1e-9) && close(r.classical, classical, 1e-9) &&
                  close(r.refined, 3.098076, 1e-6) && close(r.classical, 3.162278, 1e-6);
  report(2, ok, fmt("refined=%.12f classical=%.12f", r.refined, r.classical));
}

void uniform_m() {
  oracle::Rng rng(2024);
  double worst = 0.0, worst_abs = 0.0;
  int count = 0;
  for (int m : {2, 3, 5})
    for (int trial = 0; trial < 500; ++trial) {
      const bool grid = trial % 2 == 1;
      const std::size_t n = static_cast<std::size_t>(rng.integer(1, grid ? 6 : 16));
      const std::size_t k = grid ? static_cast<std::size_t>(rng.integer(1, 6)) : 1;
      const Domain d = grid ? Domain{IndexGrid2D{n, k}} : Domain{IndexRange1D{n}};
      const auto r = improved_holder(
          Functional::discrete_sum(d, rng.vec(n * k, 1e-3, 10)), kOne,
          FunctionSpec::samples(rng.vec(n * k, 1e-3, 10)),
          FunctionSpec::samples(rng.vec(n * k, 1e-3, 10)),
          ConjugateExponents::from_p(rng.uniform(1.1, 10)), Partition::make(PartitionKind::Uniform, d, m));
      worst = std::max(worst, oracle::rel_diff(r.refined, r.classical));
      worst_abs = std::max(worst_abs, std::fabs(r.refined - r.classical));
      ++count;
    }
  // Relative: classical values reach the hundreds, where 1e-12 absolute is
  // below the rounding of an m-term sum.
  report(3, worst <= 1e-12,
         fmt("instances=%.0f max |refined-classical|=%.3g (relative %.3g)", count, worst_abs, worst));
}

void fuzz() {
  bool ok = true;
  std::string detail;
  for (auto c : {FuzzCase::Discrete1D, FuzzCase::Discrete2D, FuzzCase::Integral1D,
                 FuzzCase::Integral2D, FuzzCase::CornerBounds, FuzzCase::Reversed1D}) {
    FuzzConfig cfg;
    cfg.fuzz_case = c;
    cfg.trials = 10000;
    cfg.seed = 20240601;
    cfg.relative_tolerance = 1e-10;
    const auto s = fuzz_chain(normalized(cfg));
    ok = ok && s.trials_run == 10000 && s.violations == 0 && s.errors == 0;
    detail += std::string(to_string(c)) + "=" + std::to_string(s.violations) + " ";
  }
  report(4, ok, "violations per case: " + detail);
}

void hh_identity() {
  const char* cases[][2] = {{"x*y", "1"}, {"x^2*y", "2*x"}, {"x^2*y^2", "4*x*y"}, {"x^3*y^3", "9*x^2*y^2"}};
  const int degrees[][2] = {{1, 1}, {2, 1}, {2, 2}, {3, 3}};
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    CornerContext ctx{Rectangle{0, 1, 0, 1}, FunctionSpec::parse(cases[i][0]),
                      FunctionSpec::parse(cases[i][1]), ConjugateExponents::from_p(2),
                      QuadratureRule{}, MeanSign::Corrected};
    const auto id = verify_hh_identity(ctx, 1e-8);
    const double exact = oracle::hh_left_unit_monomial(degrees[i][0], degrees[i][1]);
    ok = ok && id.pass && close(id.left, exact, 1e-12);
    worst = std::max(worst, id.residual);
  }
  CornerContext xy{Rectangle{0, 1, 0, 1}, FunctionSpec::parse("x*y"), FunctionSpec::parse("1"),
                   ConjugateExponents::from_p(2), QuadratureRule{}, MeanSign::Verbatim};
  const auto verbatim = verify_hh_identity(xy, 1e-8);
  ok = ok && close(verbatim.residual, 0.5, 1e-12);
  report(5, ok, fmt("max residual=%.3g, verbatim-sign residual on xy=%.12f", worst, verbatim.residual));
}

void moment() {
  bool ok = true;
  double gap = 0.0, spread = 0.0;
  for (double p : {1.0, 2.0, 3.0, 5.0}) {
    const auto km = kernel_moment(p);
    const double exact = 1.0 / (4.0 * (p + 1.0) * (p + 1.0));
    gap = std::max(gap, std::fabs(km.value - exact));
    spread = std::max(spread, km.max_spread);
    ok = ok && std::fabs(km.value - exact) <= 1e-8 && km.max_spread <= 1e-10;
  }
  report(6, ok, fmt("max gap=%.3g max placement spread=%.3g", gap, spread));
}

void corner_bounds() {
  CornerContext ctx{Rectangle{0, 1, 0, 1}, FunctionSpec::parse("x^2*y^2"), FunctionSpec::parse("4*x*y"),
                    ConjugateExponents::from_p(2), QuadratureRule{}, MeanSign::Corrected};
  const auto b = compare_corner_bounds(ctx);
  const double improved_exact = (2.0 + 4.0 * std::sqrt(2.0) / 3.0) / 24.0;
  bool ok = close(b.bound_classical, 1.0 / 6.0, 1e-6) && close(b.bound_improved, 0.161901, 1e-6) &&
            close(b.bound_improved, improved_exact, 1e-12) && b.lhs_abs <= b.bound_improved &&
            b.bound_improved <= b.bound_classical;
  double eq_gap = 0.0;
  for (double p : {1.5, 2.0, 3.0, 6.0}) {
    CornerContext flat{Rectangle{0, 2, -1, 1}, FunctionSpec::parse("3*x*y"), FunctionSpec::parse("3"),
                       ConjugateExponents::from_p(p), QuadratureRule{}, MeanSign::Corrected};
    const auto e = compare_corner_bounds(flat);
    eq_gap = std::max(eq_gap, std::fabs(e.bound_improved - e.bound_classical));
  }
  ok = ok && eq_gap <= 1e-12;
  report(7, ok, fmt("lhs=%.9f improved=%.9f classical=%.9f constant-case gap=%.3g", b.lhs_abs,
                    b.bound_improved, b.bound_classical, eq_gap));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void golden() {
  const char* runs[][2] = {{"chain", "chain_integral"}, {"chain", "chain_sum"}, {"hh", "corner_bounds"}};
  bool ok = true;
  std::string detail;
  for (const auto& [cmd, name] : runs) {
    const std::string cfg = std::string(HOLDREF_CONFIG_DIR) + "/" + name + ".json";
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
      const std::string out = std::string("acceptance_") + name + std::to_string(i) + ".csv";
      const char* argv[] = {"holdref", cmd, "--config", cfg.c_str(), "--out", out.c_str()};
      std::ostringstream o, e;
      ok = ok && holdref::cli::run_cli(6, argv, o, e) == 0;
      outputs[i] = slurp(out);
      std::remove(out.c_str());
    }
    const std::string want = slurp(std::string(HOLDREF_GOLDEN_DIR) + "/" + name + ".csv");
    const bool same = !want.empty() && outputs[0] == outputs[1] && outputs[0] == want;
    ok = ok && same;
    detail += std::string(name) + (same ? "=identical " : "=DIFFERS ");
  }
  report(8, ok, detail);
}

}  // namespace

int main() {
  chain_integral();
  chain_sum();
  uniform_m();
  fuzz();
  hh_identity();
  moment();
  corner_bounds();
  golden();
  return failures == 0 ? 0 : 1;
}
