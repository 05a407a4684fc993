#include "holdref/functional.hpp"

#include <cmath>

#include "holdref/error.hpp"

namespace holdref {

Functional::Functional(Domain domain, Scheme scheme, std::optional<Subset> support, double scale)
    : domain_(std::move(domain)),
      scheme_(std::move(scheme)),
      support_(std::move(support)),
      scale_(scale) {
  build();
}

Functional Functional::discrete_sum(const Domain& domain, std::vector<double> weights) {
  validate(domain);
  if (!is_discrete(domain))
    throw Error(ErrorKind::InvalidArgument, "weighted sums need a discrete domain");
  if (weights.empty()) weights.assign(discrete_size(domain), 1.0);
  if (weights.size() != discrete_size(domain))
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(discrete_size(domain)) +
                                              " weights, got " + std::to_string(weights.size()));
  for (double w : weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::InvalidArgument, "weighted-sum weights must be finite and >= 0");
  return Functional(domain, DiscreteSum{std::move(weights)}, std::nullopt, 1.0);
}

Functional Functional::integral(const Interval& iv, const QuadratureRule& rule) {
  validate(Domain{iv});
  validate(rule);
  return Functional(iv, Quadrature1D{rule}, std::nullopt, 1.0);
}

Functional Functional::integral(const Rectangle& rect, const QuadratureRule& rule) {
  validate(Domain{rect});
  validate(rule);
  return Functional(rect, Quadrature2D{rule}, std::nullopt, 1.0);
}

std::optional<QuadratureRule> Functional::rule() const {
  if (const auto* q = std::get_if<Quadrature1D>(&scheme_)) return q->rule;
  if (const auto* q = std::get_if<Quadrature2D>(&scheme_)) return q->rule;
  return std::nullopt;
}

void Functional::build() {
  auto data = std::make_shared<NodeData>();
  if (const auto* sum = std::get_if<DiscreteSum>(&scheme_)) {
    data->nodes = discrete_points(domain_);
    data->weights = sum->weights;
    if (support_)
      for (std::size_t i = 0; i < data->nodes.size(); ++i)
        if (!contains(*support_, data->nodes[i])) data->weights[i] = 0.0;
  } else if (const auto* q1 = std::get_if<Quadrature1D>(&scheme_)) {
    const auto& iv = std::get<Interval>(domain_);
    double lo = iv.a;
    double hi = iv.b;
    if (support_) {
      const auto& sub = std::get<SubInterval>(*support_);
      lo = sub.lo;
      hi = sub.hi;
    }
    auto nw = rule_nodes(q1->rule, lo, hi);
    data->weights = std::move(nw.weights);
    data->nodes.reserve(nw.nodes.size());
    for (double x : nw.nodes) data->nodes.push_back({x, 0.0});
  } else {
    const auto& q2 = std::get<Quadrature2D>(scheme_);
    Rectangle region = std::get<Rectangle>(domain_);
    if (support_) {
      const auto& sub = std::get<SubRectangle>(*support_);
      region = {sub.x.lo, sub.x.hi, sub.y.lo, sub.y.hi};
    }
    auto nw = rule_nodes(q2.rule, region);
    data->nodes = std::move(nw.nodes);
    data->weights = std::move(nw.weights);
  }
  if (scale_ != 1.0)
    for (double& w : data->weights) w *= scale_;
  data_ = std::move(data);
}

Functional Functional::refined() const {
  Scheme s = scheme_;
  if (auto* q1 = std::get_if<Quadrature1D>(&s)) q1->rule = doubled(q1->rule);
  if (auto* q2 = std::get_if<Quadrature2D>(&s)) q2->rule = doubled(q2->rule);
  return Functional(domain_, std::move(s), support_, scale_);
}

std::vector<double> Functional::sample(const FunctionSpec& f) const {
  if (!f.is_expression() && is_quadrature())
    throw Error(ErrorKind::ShapeMismatch, "sampled values cannot be integrated by quadrature");
  return f.sample(domain_, data_->nodes);
}

double Functional::apply(std::span<const double> values) const {
  if (values.size() != data_->weights.size())
    throw Error(ErrorKind::ShapeMismatch, "value count does not match functional nodes");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = data_->weights[i];
    if (w == 0.0) continue;
    if (!std::isfinite(values[i]))
      throw Error(ErrorKind::NonFinite, "non-finite value at node " + std::to_string(i));
    sum += w * values[i];
  }
  if (!std::isfinite(sum)) throw Error(ErrorKind::NonFinite, "functional value overflowed");
  return sum;
}

double evaluate(const Functional& A, const FunctionSpec& f) { return A(f); }

Functional restricted_functional(const Functional& base, const Subset& subset) {
  if (base.support_)
    throw Error(ErrorKind::InvalidArgument, "functional is already restricted");
  validate(subset, base.domain_);
  const Functional unscaled(base.domain_, base.scheme_, subset, 1.0);
  double mass = 0.0;
  for (double w : unscaled.weights()) mass += w;
  if (!(mass > 0.0))
    throw Error(ErrorKind::DegenerateRestriction,
                "restriction has A(chi) = " + std::to_string(mass) + ", need > 0");
  return Functional(base.domain_, base.scheme_, subset, 1.0 / mass);
}

FunctionSpec indicator(const Domain& domain, const Subset& subset) {
  validate(subset, domain);
  if (!is_discrete(domain))
    throw Error(ErrorKind::InvalidArgument, "indicator samples need a discrete domain");
  std::vector<double> values;
  for (const Point& p : discrete_points(domain)) values.push_back(contains(subset, p) ? 1.0 : 0.0);
  return FunctionSpec::samples(std::move(values));
}

}  // namespace holdref
