#include "holdref/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include "holdref/error.hpp"

namespace holdref {

namespace {

struct FuncName {
  std::string_view name;
  Expression::Func func;
};

constexpr std::array<FuncName, 6> kFunctions{{
    {"abs", Expression::Func::Abs},
    {"exp", Expression::Func::Exp},
    {"ln", Expression::Func::Ln},
    {"sqrt", Expression::Func::Sqrt},
    {"sin", Expression::Func::Sin},
    {"cos", Expression::Func::Cos},
}};

std::optional<int> variable_index(std::string_view name) {
  if (name == "t" || name == "x" || name == "k") return 0;
  if (name == "s" || name == "y" || name == "l") return 1;
  return std::nullopt;
}

std::string_view function_name(Expression::Func f) {
  for (const auto& entry : kFunctions)
    if (entry.func == f) return entry.name;
  return "?";
}

double apply(Expression::Func f, double v) {
  switch (f) {
    case Expression::Func::Abs: return std::fabs(v);
    case Expression::Func::Exp: return std::exp(v);
    case Expression::Func::Ln: return std::log(v);
    case Expression::Func::Sqrt: return std::sqrt(v);
    case Expression::Func::Sin: return std::sin(v);
    case Expression::Func::Cos: return std::cos(v);
  }
  return v;
}

double power(double base, double exponent) {
  if (base < 0.0 && std::trunc(exponent) != exponent)
    throw Error(ErrorKind::NonFinite,
                "negative base raised to a non-integer power; wrap the base in abs()");
  return std::pow(base, exponent);
}

std::string format_constant(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (v < 0.0) return "(" + s + ")";
  return s;
}

}  // namespace

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : text_(text) {}

  Expression run() {
    skip_space();
    if (at_end()) throw ParseError(ErrorKind::Syntax, pos_, "empty expression");
    parse_sum();
    skip_space();
    if (!at_end())
      throw ParseError(ErrorKind::Syntax, pos_,
                       std::string("unexpected '") + text_[pos_] + "'");
    out_.finalize();
    return std::move(out_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void emit(Expression::Op op) { out_.nodes_.push_back({.op = op}); }

  void parse_sum() {
    parse_product();
    for (;;) {
      if (accept('+')) {
        parse_product();
        emit(Expression::Op::Add);
      } else if (accept('-')) {
        parse_product();
        emit(Expression::Op::Sub);
      } else {
        return;
      }
    }
  }

  void parse_product() {
    parse_unary();
    for (;;) {
      if (accept('*')) {
        parse_unary();
        emit(Expression::Op::Mul);
      } else if (accept('/')) {
        parse_unary();
        emit(Expression::Op::Div);
      } else {
        return;
      }
    }
  }

  void parse_unary() {
    if (accept('-')) {
      parse_unary();
      emit(Expression::Op::Neg);
    } else if (accept('+')) {
      parse_unary();
    } else {
      parse_power();
    }
  }

  void parse_power() {
    parse_primary();
    if (accept('^')) {
      parse_unary();
      emit(Expression::Op::Pow);
    }
  }

  void parse_primary() {
    skip_space();
    if (at_end()) throw ParseError(ErrorKind::Syntax, pos_, "unexpected end of expression");
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      parse_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      parse_identifier();
      return;
    }
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      parse_sum();
      if (!accept(')')) {
        skip_space();
        if (at_end())
          throw ParseError(ErrorKind::Syntax, pos_,
                           "missing ')' for '(' at offset " + std::to_string(open));
        throw ParseError(ErrorKind::Syntax, pos_, "expected ')'");
      }
      return;
    }
    throw ParseError(ErrorKind::Syntax, pos_, std::string("unexpected '") + c + "'");
  }

  void parse_number() {
    const std::size_t start = pos_;
    double value = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first)
      throw ParseError(ErrorKind::Syntax, start, "malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    out_.nodes_.push_back({.op = Expression::Op::Constant, .constant = value});
  }

  void parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    for (const auto& entry : kFunctions) {
      if (entry.name != name) continue;
      if (!accept('('))
        throw ParseError(ErrorKind::Arity, start,
                         "function '" + std::string(name) + "' expects 1 argument");
      skip_space();
      if (peek() == ')')
        throw ParseError(ErrorKind::Arity, pos_,
                         "function '" + std::string(name) + "' expects 1 argument, got 0");
      parse_sum();
      skip_space();
      if (peek() == ',')
        throw ParseError(ErrorKind::Arity, pos_,
                         "function '" + std::string(name) + "' expects 1 argument");
      if (!accept(')')) throw ParseError(ErrorKind::Syntax, pos_, "expected ')'");
      out_.nodes_.push_back({.op = Expression::Op::Call, .func = entry.func});
      return;
    }

    if (auto v = variable_index(name)) {
      out_.nodes_.push_back(
          {.op = Expression::Op::Variable, .variable = static_cast<std::uint8_t>(*v)});
      return;
    }
    if (name == "pi") {
      out_.nodes_.push_back({.op = Expression::Op::Constant, .constant = std::numbers::pi});
      return;
    }
    throw ParseError(ErrorKind::UnknownIdentifier, start,
                     "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Expression out_;
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).run(); }

Expression Expression::constant(double value) {
  Expression e;
  e.nodes_.push_back({.op = Op::Constant, .constant = value});
  e.finalize();
  return e;
}

void Expression::finalize() {
  int depth = 0;
  arity_ = 0;
  max_depth_ = 0;
  for (const Node& n : nodes_) {
    switch (n.op) {
      case Op::Constant: ++depth; break;
      case Op::Variable:
        ++depth;
        arity_ = std::max(arity_, n.variable + 1);
        break;
      case Op::Neg:
      case Op::Call: break;
      default: --depth; break;
    }
    max_depth_ = std::max(max_depth_, depth);
  }
}

namespace {

template <class Stack>
double run_program(const std::vector<Expression::Node>& nodes, Point p, Stack& stack) {
  using Op = Expression::Op;
  std::size_t top = 0;
  for (const auto& n : nodes) {
    switch (n.op) {
      case Op::Constant: stack[top++] = n.constant; break;
      case Op::Variable: stack[top++] = n.variable == 0 ? p.x : p.y; break;
      case Op::Neg: stack[top - 1] = -stack[top - 1]; break;
      case Op::Call: stack[top - 1] = apply(n.func, stack[top - 1]); break;
      case Op::Add: --top; stack[top - 1] += stack[top]; break;
      case Op::Sub: --top; stack[top - 1] -= stack[top]; break;
      case Op::Mul: --top; stack[top - 1] *= stack[top]; break;
      case Op::Div: --top; stack[top - 1] /= stack[top]; break;
      case Op::Pow:
        --top;
        stack[top - 1] = power(stack[top - 1], stack[top]);
        break;
    }
  }
  return stack[0];
}

}  // namespace

double Expression::operator()(Point p) const {
  if (max_depth_ <= 32) {
    std::array<double, 32> stack;
    return run_program(nodes_, p, stack);
  }
  std::vector<double> stack(static_cast<std::size_t>(max_depth_));
  return run_program(nodes_, p, stack);
}

void Expression::evaluate(std::span<const Point> points, std::span<double> out) const {
  if (max_depth_ <= 32) {
    std::array<double, 32> stack;
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = run_program(nodes_, points[i], stack);
    return;
  }
  std::vector<double> stack(static_cast<std::size_t>(max_depth_));
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = run_program(nodes_, points[i], stack);
}

Expression Expression::substitute(const Expression& first, const Expression& second) const {
  Expression result;
  for (const Node& n : nodes_) {
    if (n.op == Op::Variable) {
      const auto& repl = n.variable == 0 ? first.nodes_ : second.nodes_;
      result.nodes_.insert(result.nodes_.end(), repl.begin(), repl.end());
    } else {
      result.nodes_.push_back(n);
    }
  }
  result.finalize();
  return result;
}

std::string Expression::to_string() const {
  std::vector<std::string> stack;
  for (const Node& n : nodes_) {
    switch (n.op) {
      case Op::Constant: stack.push_back(format_constant(n.constant)); break;
      case Op::Variable: stack.push_back(n.variable == 0 ? "t" : "s"); break;
      case Op::Neg: stack.back() = "(-" + stack.back() + ")"; break;
      case Op::Call:
        stack.back() = std::string(function_name(n.func)) + "(" + stack.back() + ")";
        break;
      default: {
        std::string rhs = std::move(stack.back());
        stack.pop_back();
        const char* sym = n.op == Op::Add   ? " + "
                          : n.op == Op::Sub ? " - "
                          : n.op == Op::Mul ? "*"
                          : n.op == Op::Div ? "/"
                                            : "^";
        stack.back() = "(" + stack.back() + sym + rhs + ")";
        break;
      }
    }
  }
  return stack.empty() ? std::string() : stack.back();
}

}  // namespace holdref
