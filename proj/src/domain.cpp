#include "holdref/domain.hpp"

#include <cmath>
#include <sstream>

#include "holdref/error.hpp"

namespace holdref {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, message);
}

bool ordered(double lo, double hi) { return std::isfinite(lo) && std::isfinite(hi) && lo < hi; }

}  // namespace

void validate(const Domain& domain) {
  std::visit(overloaded{
                 [](const IndexRange1D& d) { require(d.n >= 1, "index range needs n >= 1"); },
                 [](const IndexGrid2D& d) {
                   require(d.n >= 1 && d.m >= 1, "index grid needs n, m >= 1");
                 },
                 [](const Interval& d) { require(ordered(d.a, d.b), "interval needs a < b"); },
                 [](const Rectangle& d) {
                   require(ordered(d.a, d.b) && ordered(d.c, d.d),
                           "rectangle needs a < b and c < d");
                 },
             },
             domain);
}

int dimension(const Domain& domain) noexcept {
  return std::holds_alternative<IndexRange1D>(domain) || std::holds_alternative<Interval>(domain)
             ? 1
             : 2;
}

bool is_discrete(const Domain& domain) noexcept {
  return std::holds_alternative<IndexRange1D>(domain) ||
         std::holds_alternative<IndexGrid2D>(domain);
}

std::size_t discrete_size(const Domain& domain) noexcept {
  if (const auto* r = std::get_if<IndexRange1D>(&domain)) return r->n;
  if (const auto* g = std::get_if<IndexGrid2D>(&domain)) return g->n * g->m;
  return 0;
}

std::vector<Point> discrete_points(const Domain& domain) {
  std::vector<Point> points;
  if (const auto* r = std::get_if<IndexRange1D>(&domain)) {
    points.reserve(r->n);
    for (std::size_t k = 1; k <= r->n; ++k) points.push_back({static_cast<double>(k), 0.0});
  } else if (const auto* g = std::get_if<IndexGrid2D>(&domain)) {
    points.reserve(g->n * g->m);
    for (std::size_t k = 1; k <= g->n; ++k)
      for (std::size_t l = 1; l <= g->m; ++l)
        points.push_back({static_cast<double>(k), static_cast<double>(l)});
  }
  return points;
}

std::string describe(const Domain& domain) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const IndexRange1D& d) { os << "{1.." << d.n << "}"; },
                 [&](const IndexGrid2D& d) { os << "{1.." << d.n << "}x{1.." << d.m << "}"; },
                 [&](const Interval& d) { os << "[" << d.a << ", " << d.b << "]"; },
                 [&](const Rectangle& d) {
                   os << "[" << d.a << ", " << d.b << "]x[" << d.c << ", " << d.d << "]";
                 },
             },
             domain);
  return os.str();
}

void validate(const Subset& subset, const Domain& domain) {
  auto span_ok = [](const IndexSpan& s, std::size_t n) {
    return s.first >= 1 && s.first <= s.last && s.last <= n;
  };
  auto sub_ok = [](const SubInterval& s, double a, double b) {
    return ordered(s.lo, s.hi) && s.lo >= a && s.hi <= b;
  };
  const bool ok = std::visit(
      overloaded{
          [&](const IndexSpan& s) {
            const auto* r = std::get_if<IndexRange1D>(&domain);
            return r != nullptr && span_ok(s, r->n);
          },
          [&](const IndexBlock& s) {
            const auto* g = std::get_if<IndexGrid2D>(&domain);
            return g != nullptr && span_ok(s.rows, g->n) && span_ok(s.cols, g->m);
          },
          [&](const SubInterval& s) {
            const auto* iv = std::get_if<Interval>(&domain);
            return iv != nullptr && sub_ok(s, iv->a, iv->b);
          },
          [&](const SubRectangle& s) {
            const auto* r = std::get_if<Rectangle>(&domain);
            return r != nullptr && sub_ok(s.x, r->a, r->b) && sub_ok(s.y, r->c, r->d);
          },
      },
      subset);
  require(ok, "subset does not fit domain " + describe(domain));
}

bool contains(const Subset& subset, Point p) {
  auto in_span = [](const IndexSpan& s, double v) {
    return v >= static_cast<double>(s.first) && v <= static_cast<double>(s.last);
  };
  auto in_sub = [](const SubInterval& s, double v) { return v >= s.lo && v <= s.hi; };
  return std::visit(
      overloaded{
          [&](const IndexSpan& s) { return in_span(s, p.x); },
          [&](const IndexBlock& s) { return in_span(s.rows, p.x) && in_span(s.cols, p.y); },
          [&](const SubInterval& s) { return in_sub(s, p.x); },
          [&](const SubRectangle& s) { return in_sub(s.x, p.x) && in_sub(s.y, p.y); },
      },
      subset);
}

}  // namespace holdref
