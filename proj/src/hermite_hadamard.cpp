#include "holdref/hermite_hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "holdref/error.hpp"
#include "holdref/functional.hpp"
#include "holdref/partition.hpp"

namespace holdref {

namespace {

const Expression& expr_of(const FunctionSpec& f, const char* name) {
  if (!f.is_expression())
    throw Error(ErrorKind::ShapeMismatch, std::string(name) + " must be an expression");
  if (f.expression().arity() > 2)
    throw Error(ErrorKind::Arity, std::string(name) + " must have at most 2 variables");
  return f.expression();
}

double area(const Rectangle& r) { return (r.b - r.a) * (r.d - r.c); }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.17g)", v);
  return buf;
}

// x = t a + (1-t) b, y = s c + (1-s) d
Expression pull_back(const Expression& e, const Rectangle& r) {
  const Expression x = Expression::parse("t*" + num(r.a) + " + (1 - t)*" + num(r.b));
  const Expression y = Expression::parse("s*" + num(r.c) + " + (1 - s)*" + num(r.d));
  return e.substitute(x, y);
}

constexpr std::array<std::array<double, 4>, 4> kBracketWeights{{
    {4.0, 2.0, 2.0, 1.0},
    {2.0, 1.0, 4.0, 2.0},
    {2.0, 4.0, 1.0, 2.0},
    {1.0, 2.0, 2.0, 4.0},
}};

}  // namespace

LeftSide hh_left_side(const CornerContext& ctx) {
  validate(Domain{ctx.rect});
  const Expression& f = expr_of(ctx.f, "f");
  const Rectangle& r = ctx.rect;

  LeftSide out;
  out.corner_average = (f(r.a, r.c) + f(r.a, r.d) + f(r.b, r.c) + f(r.b, r.d)) / 4.0;
  out.mean = integrate_2d([&](double x, double y) { return f(x, y); }, r, ctx.rule).value / area(r);
  const double horizontal =
      integrate_1d([&](double x) { return f(x, r.c) + f(x, r.d); }, Interval{r.a, r.b}, ctx.rule)
          .value /
      (r.b - r.a);
  const double vertical =
      integrate_1d([&](double y) { return f(r.a, y) + f(r.b, y); }, Interval{r.c, r.d}, ctx.rule)
          .value /
      (r.d - r.c);
  out.edge_term = 0.5 * (horizontal + vertical);
  const double sign = ctx.sign == MeanSign::Corrected ? 1.0 : -1.0;
  out.value = out.corner_average + sign * out.mean - out.edge_term;
  return out;
}

double hh_kernel_rhs(const CornerContext& ctx) {
  validate(Domain{ctx.rect});
  const Expression g = pull_back(expr_of(ctx.f_st, "f_st"), ctx.rect);
  const double integral =
      integrate_2d([&](double t, double s) { return (1.0 - 2.0 * t) * (1.0 - 2.0 * s) * g(t, s); },
                   Rectangle{0.0, 1.0, 0.0, 1.0}, midpoint_aligned(ctx.rule))
          .value;
  return area(ctx.rect) / 4.0 * integral;
}

IdentityCheck verify_hh_identity(const CornerContext& ctx, double tol) {
  IdentityCheck c;
  c.left = hh_left_side(ctx).value;
  c.right = hh_kernel_rhs(ctx);
  c.residual = std::fabs(c.left - c.right);
  c.pass = c.residual <= tol;
  return c;
}

Corners corner_values(const CornerContext& ctx) {
  const Expression& fst = expr_of(ctx.f_st, "f_st");
  const Rectangle& r = ctx.rect;
  return {std::fabs(fst(r.a, r.c)), std::fabs(fst(r.a, r.d)), std::fabs(fst(r.b, r.c)),
          std::fabs(fst(r.b, r.d))};
}

double corner_bound_classical(const Rectangle& rect, const Corners& abs_corners,
                              const ConjugateExponents& exps) {
  if (exps.regime() != Regime::Standard)
    throw Error(ErrorKind::RegimeMismatch, "corner bounds need p > 1");
  const double p = exps.p();
  const double q = exps.q();
  double mean = 0.0;
  for (double v : abs_corners) mean += std::pow(std::fabs(v), q);
  mean /= 4.0;
  return area(rect) / (4.0 * std::pow(p + 1.0, 2.0 / p)) * std::pow(mean, 1.0 / q);
}

double corner_bound_classical(const CornerContext& ctx) {
  return corner_bound_classical(ctx.rect, corner_values(ctx), ctx.exps);
}

ImprovedCornerBound corner_bound_improved(const Rectangle& rect, const Corners& abs_corners,
                                          const ConjugateExponents& exps) {
  if (exps.regime() != Regime::Standard)
    throw Error(ErrorKind::RegimeMismatch, "corner bounds need p > 1");
  const double p = exps.p();
  const double q = exps.q();
  std::array<double, 4> powered{};
  for (std::size_t i = 0; i < 4; ++i) powered[i] = std::pow(std::fabs(abs_corners[i]), q);

  ImprovedCornerBound out;
  double sum = 0.0;
  for (std::size_t b = 0; b < 4; ++b) {
    double inner = 0.0;
    for (std::size_t i = 0; i < 4; ++i) inner += kBracketWeights[b][i] * powered[i];
    out.brackets[b] = std::pow(inner / 36.0, 1.0 / q);
    sum += out.brackets[b];
  }
  out.bound = area(rect) / (std::pow(4.0, 1.0 + 1.0 / p) * std::pow(p + 1.0, 2.0 / p)) * sum;
  return out;
}

ImprovedCornerBound corner_bound_improved(const CornerContext& ctx) {
  return corner_bound_improved(ctx.rect, corner_values(ctx), ctx.exps);
}

KernelMoment kernel_moment(double p, const QuadratureRule& rule) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorKind::InvalidArgument, "kernel moment needs p > 0");
  const Rectangle unit{0.0, 1.0, 0.0, 1.0};
  const QuadratureRule aligned = midpoint_aligned(rule);
  auto kernel = [p](double t, double s) {
    return std::pow(std::fabs(1.0 - 2.0 * t), p) * std::pow(std::fabs(1.0 - 2.0 * s), p);
  };
  using Weight = double (*)(double, double);
  constexpr std::array<Weight, 4> weights{
      [](double t, double s) { return t * s; },
      [](double t, double s) { return t * (1.0 - s); },
      [](double t, double s) { return (1.0 - t) * s; },
      [](double t, double s) { return (1.0 - t) * (1.0 - s); },
  };

  KernelMoment m;
  for (std::size_t i = 0; i < 4; ++i)
    m.placements[i] = apply_rule(
        [&](double t, double s) { return weights[i](t, s) * kernel(t, s); }, aligned, unit);
  m.value = m.placements[0];
  m.closed_form = 1.0 / (4.0 * (p + 1.0) * (p + 1.0));
  for (double a : m.placements)
    for (double b : m.placements) m.max_spread = std::max(m.max_spread, std::fabs(a - b));
  return m;
}

CornerBounds compare_corner_bounds(const CornerContext& ctx) {
  CornerBounds out;
  const LeftSide left = hh_left_side(ctx);
  out.lhs_abs = std::fabs(left.value);
  out.edge_term = left.edge_term;

  // Refined Hoelder step on the unit square with the corner weights of the
  // convexity expansion.
  const Rectangle unit{0.0, 1.0, 0.0, 1.0};
  const Functional A = Functional::integral(unit, midpoint_aligned(ctx.rule));
  const FunctionSpec kernel = FunctionSpec::parse("abs(1 - 2*t)*abs(1 - 2*s)");
  const FunctionSpec pulled(pull_back(expr_of(ctx.f_st, "f_st"), ctx.rect));
  const Partition corners = Partition::from_members(
      unit, {FunctionSpec::parse("t*s"), FunctionSpec::parse("t*(1 - s)"),
             FunctionSpec::parse("(1 - t)*s"), FunctionSpec::parse("(1 - t)*(1 - s)")});
  const BoundReport step =
      improved_holder(A, FunctionSpec::constant(1.0), kernel, pulled, ctx.exps, corners);
  const double prefactor = area(ctx.rect) / 4.0;
  out.kernel_abs = prefactor * step.lhs;
  out.holder_refined = prefactor * step.refined;

  const Corners abs_corners = corner_values(ctx);
  const ImprovedCornerBound improved = corner_bound_improved(ctx.rect, abs_corners, ctx.exps);
  out.bound_improved = improved.bound;
  out.brackets = improved.brackets;
  out.bound_classical = corner_bound_classical(ctx.rect, abs_corners, ctx.exps);

  const double tol = kCornerAbsTolerance + kChainTolerance * std::fabs(out.bound_classical);
  out.pass = out.lhs_abs <= out.bound_improved + tol &&
             out.bound_improved <= out.bound_classical + tol;
  return out;
}

MixedPartialCheck check_mixed_partial(const CornerContext& ctx, double step, double tol) {
  const Expression& f = expr_of(ctx.f, "f");
  const Expression& fst = expr_of(ctx.f_st, "f_st");
  const Rectangle& r = ctx.rect;
  MixedPartialCheck out;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      const double x = r.a + (r.b - r.a) * i / 6.0;
      const double y = r.c + (r.d - r.c) * j / 6.0;
      const double h = step;
      const double fd =
          (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
      const double exact = fst(x, y);
      out.max_error =
          std::max(out.max_error, std::fabs(fd - exact) / std::max(1.0, std::fabs(exact)));
    }
  out.pass = out.max_error <= tol;
  return out;
}

}  // namespace holdref
