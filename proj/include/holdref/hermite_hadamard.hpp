#pragma once

#include <array>

#include "holdref/domain.hpp"
#include "holdref/function_spec.hpp"
#include "holdref/holder.hpp"
#include "holdref/quadrature.hpp"

namespace holdref {

/// Sign of the double-integral mean in the trapezoid-type identity on a
/// rectangle. `Corrected` is corner/4 + mean - edge, which balances the
/// kernel integral; `Verbatim` is corner/4 - mean - edge as it is commonly
/// printed, kept for auditing the discrepancy.
enum class MeanSign { Corrected, Verbatim };

/// A function on [a,b]x[c,d] together with its mixed partial f_xy,
/// supplied by the caller.
struct CornerContext {
  Rectangle rect;
  FunctionSpec f;
  FunctionSpec f_st;
  ConjugateExponents exps = ConjugateExponents::from_p(2.0);
  QuadratureRule rule{};
  MeanSign sign = MeanSign::Corrected;
};

/// Corner order everywhere: (a,c), (a,d), (b,c), (b,d).
using Corners = std::array<double, 4>;

struct LeftSide {
  double corner_average = 0.0;  // [f(a,c)+f(a,d)+f(b,c)+f(b,d)]/4
  double mean = 0.0;            // double integral of f over the area
  double edge_term = 0.0;       // half the sum of the two edge-pair means
  double value = 0.0;
};

LeftSide hh_left_side(const CornerContext& ctx);

/// (b-a)(d-c)/4 * int_0^1 int_0^1 (1-2t)(1-2s) f_st(ta+(1-t)b, sc+(1-s)d) dt ds
double hh_kernel_rhs(const CornerContext& ctx);

struct IdentityCheck {
  double left = 0.0;
  double right = 0.0;
  double residual = 0.0;
  bool pass = false;
};

IdentityCheck verify_hh_identity(const CornerContext& ctx, double tol);

/// |f_st| at the four corners.
Corners corner_values(const CornerContext& ctx);

/// Classical corner bound from |f_st| corner values:
/// (b-a)(d-c) / (4 (p+1)^(2/p)) * (mean of |f_st|^q)^(1/q)
double corner_bound_classical(const Rectangle& rect, const Corners& abs_corners,
                              const ConjugateExponents& exps);
double corner_bound_classical(const CornerContext& ctx);

struct ImprovedCornerBound {
  double bound = 0.0;
  std::array<double, 4> brackets{};  // weights {4,2,2,1}, {2,1,4,2}, {2,4,1,2}, {1,2,2,4} / 36
};

ImprovedCornerBound corner_bound_improved(const Rectangle& rect, const Corners& abs_corners,
                                          const ConjugateExponents& exps);
ImprovedCornerBound corner_bound_improved(const CornerContext& ctx);

struct KernelMoment {
  double value = 0.0;                  // ts placement
  std::array<double, 4> placements{};  // ts, t(1-s), (1-t)s, (1-t)(1-s)
  double closed_form = 0.0;            // 1 / (4 (p+1)^2)
  double max_spread = 0.0;             // max pairwise difference of placements
};

/// int_0^1 int_0^1 weight(t,s) |1-2t|^p |1-2s|^p dt ds for the four corner weights.
KernelMoment kernel_moment(double p, const QuadratureRule& rule = {});

struct CornerBounds {
  double lhs_abs = 0.0;
  double edge_term = 0.0;
  double kernel_abs = 0.0;      // (b-a)(d-c)/4 * int int |1-2t||1-2s||f_st(...)|
  double holder_refined = 0.0;  // four-term refined Hoelder bound of kernel_abs
  double bound_improved = 0.0;
  std::array<double, 4> brackets{};
  double bound_classical = 0.0;
  bool pass = false;            // lhs_abs <= bound_improved <= bound_classical
};

inline constexpr double kCornerAbsTolerance = 1e-9;

/// Populates every quantity along the chain. Coordinate convexity of
/// |f_st|^q is assumed, not checked.
CornerBounds compare_corner_bounds(const CornerContext& ctx);

struct MixedPartialCheck {
  double max_error = 0.0;
  bool pass = false;
};

/// Central-difference check of the supplied f_st on an interior 5x5 grid.
/// Diagnostic only.
MixedPartialCheck check_mixed_partial(const CornerContext& ctx, double step = 1e-4,
                                      double tol = 1e-3);

}  // namespace holdref
