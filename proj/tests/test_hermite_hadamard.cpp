#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "holdref/error.hpp"
#include "holdref/hermite_hadamard.hpp"
#include "oracles.hpp"

using namespace holdref;

namespace {

const Rectangle kUnit{0, 1, 0, 1};

CornerContext ctx(const char* f, const char* f_st, double p = 2.0, Rectangle r = kUnit) {
  return CornerContext{r, FunctionSpec::parse(f), FunctionSpec::parse(f_st),
                       ConjugateExponents::from_p(p), QuadratureRule{}, MeanSign::Corrected};
}

std::string monomial(int i, int j) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "x^%d*y^%d", i, j);
  return buf;
}

std::string mixed_partial(int i, int j) {
  if (i == 0 || j == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d*x^%d*y^%d", i * j, i - 1, j - 1);
  return buf;
}

}  // namespace

TEST_CASE("left side examples") {
  CHECK(hh_left_side(ctx("x*y", "1")).value == doctest::Approx(0.0));
  const auto l = hh_left_side(ctx("x^2*y^2", "4*x*y"));
  CHECK(l.corner_average == doctest::Approx(0.25));
  CHECK(l.mean == doctest::Approx(1.0 / 9.0));
  CHECK(l.edge_term == doctest::Approx(1.0 / 3.0));
  CHECK(l.value == doctest::Approx(1.0 / 36.0).epsilon(1e-13));
  CHECK(std::fabs(hh_left_side(ctx("3.5", "0")).value) <= 1e-14);
}

TEST_CASE("kernel side examples") {
  CHECK(std::fabs(hh_kernel_rhs(ctx("x*y", "1"))) <= 1e-14);
  CHECK(hh_kernel_rhs(ctx("x^2*y^2", "4*x*y")) == doctest::Approx(1.0 / 36.0).epsilon(1e-12));
  CHECK(std::fabs(hh_kernel_rhs(ctx("x^2*y", "2*x"))) <= 1e-14);
}

TEST_CASE("identity on the polynomial corpus") {
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      const auto f = monomial(i, j), fst = mixed_partial(i, j);
      const auto c = ctx(f.c_str(), fst.c_str());
      const auto id = verify_hh_identity(c, 1e-8);
      CHECK_MESSAGE(id.pass, f);
      CHECK(id.left == doctest::Approx(oracle::hh_left_unit_monomial(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("identity on shifted rectangles") {
  const Rectangle r{-1, 2, 0.5, 1.5};
  const char* cases[][2] = {{"x^3*y^2 + x*y", "6*x^2*y + 1"},
                            {"exp(x+y)", "exp(x+y)"},
                            {"sin(x)*cos(y)", "-cos(x)*sin(y)"},
                            {"(x^2+y^2)^2", "8*x*y"}};
  for (const auto& c : cases) {
    const auto id = verify_hh_identity(ctx(c[0], c[1], 2.0, r), 1e-8);
    CHECK_MESSAGE(id.pass, c[0]);
  }
}

TEST_CASE("printed sign leaves a residual") {
  auto c = ctx("x*y", "1");
  c.sign = MeanSign::Verbatim;
  const auto id = verify_hh_identity(c, 1e-8);
  CHECK_FALSE(id.pass);
  CHECK(id.residual == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mixed partial sanity check") {
  CHECK(check_mixed_partial(ctx("x^2*y^2", "4*x*y")).pass);
  CHECK_FALSE(check_mixed_partial(ctx("x^2*y^2", "2*x*y")).pass);
}

TEST_CASE("classical corner bound") {
  const auto e2 = ConjugateExponents::from_p(2);
  CHECK(corner_bound_classical(ctx("x^2*y^2", "4*x*y")) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(corner_bound_classical(kUnit, {3, 3, 3, 3}, e2) == doctest::Approx(3.0 / 12.0));
  CHECK(corner_bound_classical(kUnit, {0, 0, 0, 0}, e2) == 0.0);
}

TEST_CASE("improved corner bound") {
  const auto b = corner_bound_improved(ctx("x^2*y^2", "4*x*y"));
  CHECK(b.brackets[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(b.brackets[1] == doctest::Approx(std::sqrt(32.0) / 6.0).epsilon(1e-14));
  CHECK(b.brackets[2] == doctest::Approx(std::sqrt(32.0) / 6.0).epsilon(1e-14));
  CHECK(b.brackets[3] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(b.bound == doctest::Approx((2.0 + 4.0 * std::sqrt(2.0) / 3.0) / 24.0).epsilon(1e-14));
  CHECK(corner_bound_improved(kUnit, {0, 0, 0, 0}, ConjugateExponents::from_p(3)).bound == 0.0);
}

TEST_CASE("constant mixed partial gives equal bounds") {
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    const auto e = ConjugateExponents::from_p(p);
    const Rectangle r{0, 2, 1, 4};
    const double kappa = 2.5;
    const double area = 6.0;
    const double imp = corner_bound_improved(r, {kappa, kappa, kappa, kappa}, e).bound;
    const double cls = corner_bound_classical(r, {kappa, kappa, kappa, kappa}, e);
    CHECK(oracle::rel_diff(imp, cls) <= 1e-12);
    CHECK(oracle::rel_diff(cls, kappa * area / (4.0 * std::pow(p + 1.0, 2.0 / p))) <= 1e-12);
  }
}

TEST_CASE("corner bounds against the closed-form oracle") {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::array<double, 4> m{rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10),
                                  rng.uniform(0, 10)};
    const double p = rng.uniform(1.1, 10);
    const Rectangle r{0, rng.uniform(0.1, 3), 0, rng.uniform(0.1, 3)};
    const double area = (r.b - r.a) * (r.d - r.c);
    const auto e = ConjugateExponents::from_p(p);
    const double imp = corner_bound_improved(r, m, e).bound;
    const double cls = corner_bound_classical(r, m, e);
    CHECK(oracle::rel_diff(imp, oracle::corner_improved(area, m, p)) <= 1e-12);
    CHECK(oracle::rel_diff(cls, oracle::corner_classical(area, m, p)) <= 1e-12);
    CHECK(imp <= cls + 1e-10 * cls);
  }
}

TEST_CASE("kernel moment") {
  for (double p : {1.0, 2.0, 3.0, 5.0}) {
    const auto km = kernel_moment(p);
    const double exact = 1.0 / (4.0 * (p + 1.0) * (p + 1.0));
    CHECK(km.closed_form == doctest::Approx(exact).epsilon(1e-15));
    CHECK(std::fabs(km.value - exact) <= 1e-8);
    CHECK(km.max_spread <= 1e-10);
    for (double v : km.placements) CHECK(std::fabs(v - exact) <= 1e-8);
  }
  CHECK(kernel_moment(1.0).value == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(kernel_moment(3.0).value == doctest::Approx(0.015625).epsilon(1e-12));
}

TEST_CASE("comparison ordering") {
  const auto b = compare_corner_bounds(ctx("x^2*y^2", "4*x*y"));
  CHECK(b.pass);
  CHECK(b.lhs_abs == doctest::Approx(0.027778).epsilon(1e-5));
  CHECK(b.bound_improved == doctest::Approx(0.161901).epsilon(1e-5));
  CHECK(b.bound_classical == doctest::Approx(0.166667).epsilon(1e-5));
  CHECK(b.lhs_abs <= b.kernel_abs + 1e-12);
  CHECK(b.kernel_abs <= b.holder_refined + 1e-12);
}

TEST_CASE("coordinate-convex corpus stays under the improved bound") {
  const char* cases[][2] = {{"x^2*y^2", "4*x*y"},
                            {"exp(x+y)", "exp(x+y)"},
                            {"(x^2+1)*(y^2+1)", "4*x*y"},
                            {"x^4*y^2", "8*x^3*y"}};
  const Rectangle rects[] = {kUnit, Rectangle{0.5, 2, 1, 3}};
  for (const auto& r : rects)
    for (double p : {1.5, 2.0, 4.0})
      for (const auto& c : cases) {
        const auto b = compare_corner_bounds(ctx(c[0], c[1], p, r));
        CHECK_MESSAGE(b.pass, c[0]);
        CHECK(b.lhs_abs <= b.bound_improved + 1e-9);
        CHECK(b.bound_improved <= b.bound_classical + 1e-9);
      }
}

TEST_CASE("linear-in-each-variable functions") {
  const auto b = compare_corner_bounds(ctx("2*x*y + x - y", "2"));
  CHECK(std::fabs(b.lhs_abs) <= 1e-12);
  CHECK(b.bound_improved >= 0.0);
  CHECK(b.bound_improved == doctest::Approx(b.bound_classical).epsilon(1e-12));
}

TEST_CASE("reversed exponents are rejected") {
  auto c = ctx("x*y", "1");
  c.exps = ConjugateExponents::from_p(0.5);
  CHECK_THROWS_AS(corner_bound_classical(c), Error);
}
