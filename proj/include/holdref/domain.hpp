#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "holdref/expression.hpp"

namespace holdref {

/// {1, ..., n}
struct IndexRange1D {
  std::size_t n = 1;

  bool operator==(const IndexRange1D&) const = default;
};

/// {1, ..., n} x {1, ..., m}; samples are row-major (k outer, l inner).
struct IndexGrid2D {
  std::size_t n = 1;
  std::size_t m = 1;

  bool operator==(const IndexGrid2D&) const = default;
};

/// [a, b] with a < b.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  bool operator==(const Interval&) const = default;
};

/// [a, b] x [c, d] with a < b, c < d.
struct Rectangle {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double d = 1.0;

  bool operator==(const Rectangle&) const = default;
};

using Domain = std::variant<IndexRange1D, IndexGrid2D, Interval, Rectangle>;

/// Throws Error(InvalidArgument) when the domain violates its invariants.
void validate(const Domain& domain);

int dimension(const Domain& domain) noexcept;
bool is_discrete(const Domain& domain) noexcept;

/// Number of points of a discrete domain; 0 for continuous ones.
std::size_t discrete_size(const Domain& domain) noexcept;

/// All points of a discrete domain in sample order, with 1-based coordinates.
std::vector<Point> discrete_points(const Domain& domain);

std::string describe(const Domain& domain);

/// Contiguous subsets of a domain, used for indicator functions and
/// restricted functionals. Index bounds are 1-based and inclusive.
struct IndexSpan {
  std::size_t first = 1;
  std::size_t last = 1;
};

struct IndexBlock {
  IndexSpan rows;
  IndexSpan cols;
};

struct SubInterval {
  double lo = 0.0;
  double hi = 1.0;
};

struct SubRectangle {
  SubInterval x;
  SubInterval y;
};

using Subset = std::variant<IndexSpan, IndexBlock, SubInterval, SubRectangle>;

/// Throws Error(InvalidArgument) if the subset does not fit the domain.
void validate(const Subset& subset, const Domain& domain);

/// Pointwise membership test.
bool contains(const Subset& subset, Point p);

}  // namespace holdref
