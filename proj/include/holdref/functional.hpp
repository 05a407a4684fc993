#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "holdref/domain.hpp"
#include "holdref/function_spec.hpp"
#include "holdref/quadrature.hpp"

namespace holdref {

struct DiscreteSum {
  std::vector<double> weights;  // p_k >= 0, one per domain point
};
struct Quadrature1D {
  QuadratureRule rule;
};
struct Quadrature2D {
  QuadratureRule rule;
};
using Scheme = std::variant<DiscreteSum, Quadrature1D, Quadrature2D>;

/// Isotonic linear functional A(f) = sum_i w_i f(x_i) with all w_i >= 0.
///
/// Weighted sums use the domain points directly; integrals use the nodes of
/// a composite quadrature rule. A restricted functional keeps the domain of
/// its parent but carries only the nodes of the subset, normalized so that
/// it maps the constant 1 to 1.
class Functional {
 public:
  /// Empty `weights` means unit weights.
  static Functional discrete_sum(const Domain& domain, std::vector<double> weights = {});
  static Functional integral(const Interval& iv, const QuadratureRule& rule = {});
  static Functional integral(const Rectangle& rect, const QuadratureRule& rule = {});

  const Domain& domain() const noexcept { return domain_; }
  const Scheme& scheme() const noexcept { return scheme_; }
  const std::optional<Subset>& support() const noexcept { return support_; }
  double scale() const noexcept { return scale_; }

  bool is_quadrature() const noexcept { return !std::holds_alternative<DiscreteSum>(scheme_); }
  std::optional<QuadratureRule> rule() const;

  std::span<const Point> nodes() const noexcept { return data_->nodes; }
  std::span<const double> weights() const noexcept { return data_->weights; }

  /// Same functional with twice as many quadrature panels; weighted sums
  /// are returned unchanged.
  Functional refined() const;

  /// Values of `f` at the nodes. Throws on arity or shape mismatch.
  std::vector<double> sample(const FunctionSpec& f) const;

  /// sum_i w_i values_i in node order; throws Error(NonFinite) on inf/nan.
  double apply(std::span<const double> values) const;

  double operator()(const FunctionSpec& f) const { return apply(sample(f)); }

 private:
  struct NodeData {
    std::vector<Point> nodes;
    std::vector<double> weights;
  };

  Functional(Domain domain, Scheme scheme, std::optional<Subset> support, double scale);
  void build();

  friend Functional restricted_functional(const Functional& base, const Subset& subset);

  Domain domain_;
  Scheme scheme_;
  std::optional<Subset> support_;
  double scale_ = 1.0;
  std::shared_ptr<const NodeData> data_;
};

double evaluate(const Functional& A, const FunctionSpec& f);

/// B(f) = A(f chi_E1) / A(chi_E1). Throws Error(DegenerateRestriction) when
/// A(chi_E1) <= 0.
Functional restricted_functional(const Functional& base, const Subset& subset);

/// Indicator of `subset` as sampled values on a discrete domain.
FunctionSpec indicator(const Domain& domain, const Subset& subset);

}  // namespace holdref
