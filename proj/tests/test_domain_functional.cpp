#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "holdref/error.hpp"
#include "holdref/functional.hpp"
#include "oracles.hpp"

using namespace holdref;

namespace {

FunctionSpec samples(std::vector<double> v) { return FunctionSpec::samples(std::move(v)); }

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(validate(Domain{IndexRange1D{0}}), Error);
  CHECK_THROWS_AS(validate(Domain{Interval{1, 1}}), Error);
  CHECK_THROWS_AS(validate(Domain{Rectangle{0, 1, 2, 1}}), Error);
  CHECK_THROWS_AS(validate(Domain{Interval{0, INFINITY}}), Error);
  CHECK_NOTHROW(validate(Domain{IndexGrid2D{2, 5}}));
  CHECK(discrete_size(IndexGrid2D{2, 5}) == 10);
  const auto pts = discrete_points(IndexGrid2D{2, 2});
  REQUIRE(pts.size() == 4);
  CHECK(pts[1].x == 1.0);
  CHECK(pts[1].y == 2.0);
}

TEST_CASE("discrete sum with unit weights") {
  const auto A = Functional::discrete_sum(IndexRange1D{3});
  CHECK(A(FunctionSpec::parse("k")) == 6.0);
  CHECK(A(samples({1, 2, 3})) == 6.0);
}

TEST_CASE("weighted discrete sum") {
  const auto A = Functional::discrete_sum(IndexRange1D{3}, {0.5, 0.0, 2.0});
  CHECK(A(FunctionSpec::parse("k")) == doctest::Approx(6.5));
  CHECK_THROWS_AS(Functional::discrete_sum(IndexRange1D{3}, {1, -1, 1}), Error);
  CHECK_THROWS_AS(Functional::discrete_sum(IndexRange1D{3}, {1, 1}), Error);
}

TEST_CASE("quadrature functionals match antiderivatives") {
  const auto A1 = Functional::integral(Interval{0, 1});
  CHECK(A1(FunctionSpec::parse("t")) == doctest::Approx(0.5).epsilon(1e-14));
  const auto A2 = Functional::integral(Rectangle{0, 1, 0, 1});
  CHECK(A2(FunctionSpec::parse("x*y")) == doctest::Approx(0.25).epsilon(1e-14));
  const auto A3 = Functional::integral(Rectangle{-1, 2, 1, 3});
  CHECK(A3(FunctionSpec::parse("x^2*y^3")) ==
        doctest::Approx(oracle::monomial_integral(2, 3, -1, 2, 1, 3)).epsilon(1e-13));
}

TEST_CASE("samples are rejected under quadrature") {
  const auto A = Functional::integral(Interval{0, 1});
  CHECK_THROWS_AS(A(samples({1, 2})), Error);
}

TEST_CASE("non-finite values raise") {
  const auto A = Functional::integral(Interval{0, 1});
  CHECK_THROWS_AS(A(FunctionSpec::parse("ln(t-2)")), Error);
  const auto B = Functional::discrete_sum(IndexRange1D{2});
  CHECK_THROWS_AS(B(FunctionSpec::parse("1/(k-1)")), Error);
}

TEST_CASE("restricted functional on an interval") {
  const auto A = Functional::integral(Interval{0, 2});
  const auto R = restricted_functional(A, SubInterval{0, 1});
  CHECK(R(FunctionSpec::constant(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(R(FunctionSpec::parse("t")) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(restricted_functional(R, SubInterval{0, 0.5}), Error);
}

TEST_CASE("restricted functional on a sum") {
  const auto A = Functional::discrete_sum(IndexRange1D{4});
  const auto R = restricted_functional(A, IndexSpan{1, 2});
  CHECK(R(FunctionSpec::parse("k")) == doctest::Approx(1.5));
  const auto Z = Functional::discrete_sum(IndexRange1D{4}, {0, 0, 1, 1});
  try {
    restricted_functional(Z, IndexSpan{1, 2});
    FAIL("expected degenerate restriction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateRestriction);
  }
}

TEST_CASE("restricted functional on a rectangle") {
  const auto A = Functional::integral(Rectangle{0, 2, 0, 2});
  const auto R = restricted_functional(A, SubRectangle{{0, 1}, {1, 2}});
  CHECK(R(FunctionSpec::parse("x*y")) == doctest::Approx(0.5 * 1.5).epsilon(1e-13));
}

TEST_CASE("linearity on discrete domains") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 20));
    const auto A = Functional::discrete_sum(IndexRange1D{n}, rng.vec(n, 0.0, 5.0));
    const auto f = rng.vec(n, -10, 10), g = rng.vec(n, -10, 10);
    const double al = rng.uniform(-3, 3), be = rng.uniform(-3, 3);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = al * f[i] + be * g[i];
    const double lhs = A(samples(h));
    const double rhs = al * A(samples(f)) + be * A(samples(g));
    double abs_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) abs_scale += A.weights()[i] * (std::fabs(al * f[i]) + std::fabs(be * g[i]));
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(abs_scale, 1e-300));
  }
}

TEST_CASE("isotonicity on discrete domains") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 20));
    const auto A = Functional::discrete_sum(IndexRange1D{n}, rng.vec(n, 0.0, 5.0));
    const auto g = rng.vec(n, -10, 10);
    auto f = g;
    for (auto& v : f) v += rng.uniform(0.0, 2.0);
    CHECK(A(samples(f)) >= A(samples(g)) - 1e-12);
  }
}

TEST_CASE("restriction decomposition on discrete domains") {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 20));
    const std::size_t cut = static_cast<std::size_t>(rng.integer(1, static_cast<int>(n) - 1));
    const Domain d = IndexRange1D{n};
    const auto A = Functional::discrete_sum(d, rng.vec(n, 0.1, 5.0));
    const auto chi1 = indicator(d, IndexSpan{1, cut});
    const auto chi2 = indicator(d, IndexSpan{cut + 1, n});
    CHECK(oracle::rel_diff(A(chi1) + A(chi2), A(FunctionSpec::constant(1.0))) <= 1e-12);
    const auto f = rng.vec(n, 0.0, 10.0);
    const double split = A(samples(mul(f, chi1.sampled().values))) +
                         A(samples(mul(f, chi2.sampled().values)));
    CHECK(oracle::rel_diff(split, A(samples(f))) <= 1e-12);
  }
}

TEST_CASE("restriction decomposition on a grid") {
  const Domain d = IndexGrid2D{3, 4};
  const auto A = Functional::discrete_sum(d);
  const auto f = FunctionSpec::parse("k + 10*l");
  const auto R = restricted_functional(A, IndexBlock{{1, 2}, {2, 4}});
  // block rows 1..2, cols 2..4: mean of k + 10 l = 1.5 + 30
  CHECK(R(f) == doctest::Approx(31.5));
}
