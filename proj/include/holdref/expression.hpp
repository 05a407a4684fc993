#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace holdref {

/// A point in one or two dimensions. One-dimensional domains ignore `y`.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Parsed arithmetic expression over up to two variables.
///
/// Variable names: `t`, `x`, `k` bind to the first coordinate and `s`, `y`,
/// `l` to the second. Supported operators are `+ - * / ^` (with `^` right
/// associative and binding tighter than unary minus), parentheses, the
/// constant `pi`, and the unary functions abs, exp, ln, sqrt, sin, cos.
///
/// Nodes are stored in postfix order, so evaluation is a single forward
/// pass over the node array with an operand stack.
class Expression {
 public:
  enum class Op : std::uint8_t { Constant, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
  enum class Func : std::uint8_t { Abs, Exp, Ln, Sqrt, Sin, Cos };

  struct Node {
    Op op = Op::Constant;
    Func func = Func::Abs;
    std::uint8_t variable = 0;
    double constant = 0.0;
  };

  /// Throws ParseError on malformed input.
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  /// Number of coordinates the expression reads: 0, 1 or 2.
  int arity() const noexcept { return arity_; }

  double operator()(Point p) const;
  double operator()(double x, double y = 0.0) const { return (*this)(Point{x, y}); }

  /// Evaluates at every point; `out` must have the same size as `points`.
  void evaluate(std::span<const Point> points, std::span<double> out) const;

  /// Replaces the first and second coordinate by the given expressions.
  Expression substitute(const Expression& first, const Expression& second) const;

  /// Fully parenthesized text that parses back to an equivalent expression.
  std::string to_string() const;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }

 private:
  friend class ExpressionParser;

  void finalize();

  std::vector<Node> nodes_;
  int arity_ = 0;
  int max_depth_ = 0;
};

}  // namespace holdref
