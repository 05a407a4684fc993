#include "holdref/quadrature.hpp"

#include <numbers>

namespace holdref {

std::string_view to_string(QuadratureFamily family) noexcept {
  switch (family) {
    case QuadratureFamily::CompositeMidpoint: return "composite-midpoint";
    case QuadratureFamily::CompositeSimpson: return "composite-simpson";
    case QuadratureFamily::GaussLegendre: return "gauss-legendre-composite";
  }
  return "?";
}

QuadratureFamily parse_quadrature_family(std::string_view name) {
  if (name == "composite-midpoint" || name == "midpoint") return QuadratureFamily::CompositeMidpoint;
  if (name == "composite-simpson" || name == "simpson") return QuadratureFamily::CompositeSimpson;
  if (name == "gauss-legendre-composite" || name == "gauss-legendre" || name == "gauss")
    return QuadratureFamily::GaussLegendre;
  throw Error(ErrorKind::InvalidArgument, "unknown quadrature family '" + std::string(name) + "'");
}

void validate(const QuadratureRule& rule) {
  if (rule.panels < 1) throw Error(ErrorKind::InvalidArgument, "quadrature needs panels >= 1");
  if (rule.family == QuadratureFamily::GaussLegendre &&
      (rule.nodes_per_panel < 1 || rule.nodes_per_panel > 64))
    throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre needs 1..64 nodes per panel");
}

int convergence_order(const QuadratureRule& rule) {
  switch (rule.family) {
    case QuadratureFamily::CompositeMidpoint: return 2;
    case QuadratureFamily::CompositeSimpson: return 4;
    case QuadratureFamily::GaussLegendre: return 2 * rule.nodes_per_panel;
  }
  return 2;
}

QuadratureRule doubled(QuadratureRule rule) {
  rule.panels *= 2;
  return rule;
}

QuadratureRule midpoint_aligned(QuadratureRule rule) {
  if (rule.panels % 2 != 0) ++rule.panels;
  return rule;
}

GaussTable gauss_legendre(int n) {
  GaussTable table;
  table.nodes.assign(static_cast<std::size_t>(n), 0.0);
  table.weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn_1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn_1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-16) break;
    }
    // recompute the derivative at the converged node for the weight
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    table.nodes[lo] = -x;
    table.nodes[hi] = x;
    table.weights[lo] = w;
    table.weights[hi] = w;
  }
  if (n % 2 == 1) table.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return table;
}

NodeWeights1D rule_nodes(const QuadratureRule& rule, double a, double b) {
  validate(rule);
  NodeWeights1D out;
  const int panels = rule.panels;
  const double h = (b - a) / panels;
  auto left = [&](int i) { return a + (b - a) * i / panels; };

  switch (rule.family) {
    case QuadratureFamily::CompositeMidpoint:
      for (int i = 0; i < panels; ++i) {
        out.nodes.push_back(a + (b - a) * (i + 0.5) / panels);
        out.weights.push_back(h);
      }
      break;
    case QuadratureFamily::CompositeSimpson:
      for (int i = 0; i < panels; ++i) {
        const double x0 = left(i);
        const double x1 = i + 1 == panels ? b : left(i + 1);
        if (i == 0) {
          out.nodes.push_back(x0);
          out.weights.push_back(h / 6.0);
        } else {
          out.weights.back() += h / 6.0;
        }
        out.nodes.push_back(0.5 * (x0 + x1));
        out.weights.push_back(4.0 * h / 6.0);
        out.nodes.push_back(x1);
        out.weights.push_back(h / 6.0);
      }
      break;
    case QuadratureFamily::GaussLegendre: {
      const GaussTable g = gauss_legendre(rule.nodes_per_panel);
      for (int i = 0; i < panels; ++i) {
        const double x0 = left(i);
        const double x1 = i + 1 == panels ? b : left(i + 1);
        const double mid = 0.5 * (x0 + x1);
        const double rad = 0.5 * (x1 - x0);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
          out.nodes.push_back(mid + rad * g.nodes[j]);
          out.weights.push_back(rad * g.weights[j]);
        }
      }
      break;
    }
  }
  return out;
}

NodeWeights2D rule_nodes(const QuadratureRule& rule, const Rectangle& rect) {
  const auto x = rule_nodes(rule, rect.a, rect.b);
  const auto y = rule_nodes(rule, rect.c, rect.d);
  NodeWeights2D out;
  out.nodes.reserve(x.nodes.size() * y.nodes.size());
  out.weights.reserve(x.nodes.size() * y.nodes.size());
  for (std::size_t i = 0; i < x.nodes.size(); ++i)
    for (std::size_t j = 0; j < y.nodes.size(); ++j) {
      out.nodes.push_back({x.nodes[i], y.nodes[j]});
      out.weights.push_back(x.weights[i] * y.weights[j]);
    }
  return out;
}

QuadResult richardson(double coarse, double fine, int order) {
  const double factor = std::ldexp(1.0, order);  // 2^order
  const double diff = fine - coarse;
  return {.value = coarse,
          .error_estimate = std::fabs(diff) * factor / (factor - 1.0),
          .extrapolated = fine + diff / (factor - 1.0)};
}

namespace {

void require_arity(const FunctionSpec& f, const Domain& domain) {
  if (!f.is_expression())
    throw Error(ErrorKind::ShapeMismatch, "quadrature needs an expression, not sampled values");
  f.check_compatible(domain);
}

}  // namespace

QuadResult integrate_1d(const FunctionSpec& f, const Interval& iv, const QuadratureRule& rule) {
  require_arity(f, iv);
  const Expression& e = f.expression();
  return integrate_1d([&](double t) { return e(t); }, iv, rule);
}

QuadResult integrate_2d(const FunctionSpec& f, const Rectangle& rect, const QuadratureRule& rule) {
  require_arity(f, rect);
  const Expression& e = f.expression();
  return integrate_2d([&](double x, double y) { return e(x, y); }, rect, rule);
}

}  // namespace holdref
