#pragma once

#include <concepts>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "holdref/domain.hpp"
#include "holdref/error.hpp"
#include "holdref/function_spec.hpp"

namespace holdref {

enum class QuadratureFamily { CompositeMidpoint, CompositeSimpson, GaussLegendre };

std::string_view to_string(QuadratureFamily family) noexcept;
QuadratureFamily parse_quadrature_family(std::string_view name);

/// Composite rule on uniform panels. All node weights are positive, so the
/// discretized integral is itself an isotonic linear functional.
struct QuadratureRule {
  QuadratureFamily family = QuadratureFamily::GaussLegendre;
  int panels = 32;
  int nodes_per_panel = 5;  // Gauss-Legendre only

  bool operator==(const QuadratureRule&) const = default;
};

void validate(const QuadratureRule& rule);

/// Algebraic convergence order in the panel width h, for smooth integrands.
int convergence_order(const QuadratureRule& rule);

QuadratureRule doubled(QuadratureRule rule);

/// Rounds the panel count up to an even number so that the midpoint of the
/// interval is a panel boundary (kernels like |1-2t|^p kink there).
QuadratureRule midpoint_aligned(QuadratureRule rule);

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussTable {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussTable gauss_legendre(int n);

struct NodeWeights1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
NodeWeights1D rule_nodes(const QuadratureRule& rule, double a, double b);

/// Tensor-product nodes on a rectangle, x outer and y inner.
struct NodeWeights2D {
  std::vector<Point> nodes;
  std::vector<double> weights;
};
NodeWeights2D rule_nodes(const QuadratureRule& rule, const Rectangle& rect);

struct QuadResult {
  double value = 0.0;           // at the requested resolution
  double error_estimate = 0.0;  // Richardson estimate of |value - exact|
  double extrapolated = 0.0;    // Richardson-extrapolated value
};

QuadResult richardson(double coarse, double fine, int order);

/// Sum of weights * fn(nodes) in ascending node order.
template <std::invocable<double> F>
double apply_rule(F&& fn, const QuadratureRule& rule, double a, double b) {
  const auto nw = rule_nodes(rule, a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < nw.nodes.size(); ++i) {
    const double v = fn(nw.nodes[i]);
    if (!std::isfinite(v))
      throw Error(ErrorKind::NonFinite, "non-finite integrand at t=" + std::to_string(nw.nodes[i]));
    sum += nw.weights[i] * v;
  }
  return sum;
}

template <std::invocable<double, double> F>
double apply_rule(F&& fn, const QuadratureRule& rule, const Rectangle& rect) {
  const auto x = rule_nodes(rule, rect.a, rect.b);
  const auto y = rule_nodes(rule, rect.c, rect.d);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.nodes.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < y.nodes.size(); ++j) {
      const double v = fn(x.nodes[i], y.nodes[j]);
      if (!std::isfinite(v))
        throw Error(ErrorKind::NonFinite, "non-finite integrand at (" + std::to_string(x.nodes[i]) +
                                              ", " + std::to_string(y.nodes[j]) + ")");
      row += y.weights[j] * v;
    }
    sum += x.weights[i] * row;
  }
  return sum;
}

template <std::invocable<double> F>
QuadResult integrate_1d(F&& fn, const Interval& iv, const QuadratureRule& rule) {
  validate(Domain{iv});
  validate(rule);
  const double coarse = apply_rule(fn, rule, iv.a, iv.b);
  const double fine = apply_rule(fn, doubled(rule), iv.a, iv.b);
  return richardson(coarse, fine, convergence_order(rule));
}

template <std::invocable<double, double> F>
QuadResult integrate_2d(F&& fn, const Rectangle& rect, const QuadratureRule& rule) {
  validate(Domain{rect});
  validate(rule);
  const double coarse = apply_rule(fn, rule, rect);
  const double fine = apply_rule(fn, doubled(rule), rect);
  return richardson(coarse, fine, convergence_order(rule));
}

QuadResult integrate_1d(const FunctionSpec& f, const Interval& iv,
                        const QuadratureRule& rule = {});
QuadResult integrate_2d(const FunctionSpec& f, const Rectangle& rect,
                        const QuadratureRule& rule = {});

}  // namespace holdref
