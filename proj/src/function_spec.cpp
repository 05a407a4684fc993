#include "holdref/function_spec.hpp"

#include <cmath>
#include <cstdio>

#include "holdref/error.hpp"

namespace holdref {

FunctionSpec::FunctionSpec(Expression expr, std::string text)
    : repr_(std::move(expr)), text_(std::move(text)) {
  if (text_.empty()) text_ = std::get<Expression>(repr_).to_string();
}

FunctionSpec FunctionSpec::parse(std::string_view text) {
  return FunctionSpec(Expression::parse(text), std::string(text));
}

FunctionSpec FunctionSpec::constant(double value) {
  return FunctionSpec(Expression::constant(value));
}

void FunctionSpec::check_compatible(const Domain& domain) const {
  if (const auto* e = std::get_if<Expression>(&repr_)) {
    if (e->arity() > dimension(domain))
      throw Error(ErrorKind::Arity, "expression '" + text_ + "' uses " +
                                        std::to_string(e->arity()) + " variables on " +
                                        std::to_string(dimension(domain)) + "D domain " +
                                        describe(domain));
    return;
  }
  const auto& values = std::get<Samples>(repr_).values;
  if (!is_discrete(domain))
    throw Error(ErrorKind::ShapeMismatch,
                "sampled values need a discrete domain, got " + describe(domain));
  if (values.size() != discrete_size(domain))
    throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(discrete_size(domain)) +
                                              " samples on " + describe(domain) + ", got " +
                                              std::to_string(values.size()));
}

std::vector<double> FunctionSpec::sample(const Domain& domain,
                                         std::span<const Point> points) const {
  check_compatible(domain);
  if (const auto* e = std::get_if<Expression>(&repr_)) {
    std::vector<double> out(points.size());
    e->evaluate(points, out);
    return out;
  }
  const auto& values = std::get<Samples>(repr_).values;
  if (points.size() != values.size())
    throw Error(ErrorKind::ShapeMismatch, "sampled function evaluated off its grid");
  return values;
}

double FunctionSpec::at(const Domain& domain, Point p) const {
  check_compatible(domain);
  if (const auto* e = std::get_if<Expression>(&repr_)) return (*e)(p);
  const auto& values = std::get<Samples>(repr_).values;
  std::size_t index = static_cast<std::size_t>(std::llround(p.x)) - 1;
  if (const auto* g = std::get_if<IndexGrid2D>(&domain))
    index = index * g->m + static_cast<std::size_t>(std::llround(p.y)) - 1;
  if (index >= values.size()) throw Error(ErrorKind::ShapeMismatch, "sample index out of range");
  return values[index];
}

std::string FunctionSpec::to_string() const {
  if (is_expression()) return text_;
  std::string out = "[";
  char buf[40];
  for (std::size_t i = 0; i < sampled().values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", sampled().values[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + "]";
}

}  // namespace holdref
