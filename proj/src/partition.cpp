#include "holdref/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "holdref/error.hpp"

namespace holdref {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string("(") + buf + ")";
}

FunctionSpec member(const std::string& text) { return FunctionSpec::parse(text); }

void mismatch(PartitionKind kind, const Domain& domain) {
  throw Error(ErrorKind::InvalidArgument, std::string("partition '") +
                                              std::string(to_string(kind)) +
                                              "' does not apply to domain " + describe(domain));
}

}  // namespace

std::string_view to_string(PartitionKind kind) noexcept {
  switch (kind) {
    case PartitionKind::LinearPair: return "linear-pair";
    case PartitionKind::DiscretePair: return "discrete-pair";
    case PartitionKind::BilinearQuad: return "bilinear-quad";
    case PartitionKind::DiscreteBilinearQuad: return "discrete-bilinear-quad";
    case PartitionKind::Uniform: return "uniform";
    case PartitionKind::Custom: return "custom";
  }
  return "?";
}

PartitionKind parse_partition_kind(std::string_view name) {
  for (auto k : {PartitionKind::LinearPair, PartitionKind::DiscretePair,
                 PartitionKind::BilinearQuad, PartitionKind::DiscreteBilinearQuad,
                 PartitionKind::Uniform})
    if (to_string(k) == name) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown partition kind '" + std::string(name) + "'");
}

Partition Partition::make(PartitionKind kind, const Domain& domain, std::optional<int> m) {
  validate(domain);
  std::vector<FunctionSpec> members;
  switch (kind) {
    case PartitionKind::LinearPair: {
      const auto* iv = std::get_if<Interval>(&domain);
      if (!iv) mismatch(kind, domain);
      const std::string a = num(iv->a), b = num(iv->b), len = num(iv->b - iv->a);
      members.push_back(member("(" + b + " - t)/" + len));
      members.push_back(member("(t - " + a + ")/" + len));
      break;
    }
    case PartitionKind::DiscretePair: {
      const auto* r = std::get_if<IndexRange1D>(&domain);
      if (!r) mismatch(kind, domain);
      const std::string n = num(static_cast<double>(r->n));
      members.push_back(member("k/" + n));
      members.push_back(member("(" + n + " - k)/" + n));
      break;
    }
    case PartitionKind::BilinearQuad: {
      const auto* r = std::get_if<Rectangle>(&domain);
      if (!r) mismatch(kind, domain);
      const std::string a = num(r->a), b = num(r->b), c = num(r->c), d = num(r->d);
      const std::string area = "(" + num(r->b - r->a) + "*" + num(r->d - r->c) + ")";
      members.push_back(member("(" + b + " - x)*(" + d + " - y)/" + area));
      members.push_back(member("(" + b + " - x)*(y - " + c + ")/" + area));
      members.push_back(member("(x - " + a + ")*(y - " + c + ")/" + area));
      members.push_back(member("(x - " + a + ")*(" + d + " - y)/" + area));
      break;
    }
    case PartitionKind::DiscreteBilinearQuad: {
      const auto* g = std::get_if<IndexGrid2D>(&domain);
      if (!g) mismatch(kind, domain);
      const std::string n = num(static_cast<double>(g->n)), m2 = num(static_cast<double>(g->m));
      const std::string nm = "(" + n + "*" + m2 + ")";
      members.push_back(member("k*l/" + nm));
      members.push_back(member("(" + n + " - k)*l/" + nm));
      members.push_back(member("(" + n + " - k)*(" + m2 + " - l)/" + nm));
      members.push_back(member("k*(" + m2 + " - l)/" + nm));
      break;
    }
    case PartitionKind::Uniform: {
      if (!m || *m < 1) throw Error(ErrorKind::InvalidArgument, "uniform partition needs m >= 1");
      const FunctionSpec each = member("1/" + std::to_string(*m));
      members.assign(static_cast<std::size_t>(*m), each);
      break;
    }
    case PartitionKind::Custom:
      throw Error(ErrorKind::InvalidArgument, "use Partition::from_members for custom partitions");
  }
  return Partition(kind, domain, std::move(members));
}

Partition Partition::from_members(const Domain& domain, std::vector<FunctionSpec> members,
                                  double tolerance) {
  validate(domain);
  if (members.empty()) throw Error(ErrorKind::InvalidArgument, "partition needs >= 1 member");
  for (const auto& f : members) f.check_compatible(domain);
  Partition part(PartitionKind::Custom, domain, std::move(members));
  const auto points = validation_points(domain);
  const Check c = part.check(points);
  if (c.max_sum_error > tolerance)
    throw Error(ErrorKind::InvalidArgument,
                "partition members do not sum to 1 (max error " + std::to_string(c.max_sum_error) + ")");
  if (c.min_member < -tolerance)
    throw Error(ErrorKind::InvalidArgument,
                "partition member is negative (min " + std::to_string(c.min_member) + ")");
  return part;
}

std::vector<double> Partition::weights_at(Point p) const {
  std::vector<double> out;
  out.reserve(members_.size());
  for (const auto& f : members_) out.push_back(f.at(domain_, p));
  return out;
}

Partition::Check Partition::check(std::span<const Point> points) const {
  Check c{0.0, std::numeric_limits<double>::infinity()};
  for (const Point& p : points) {
    double sum = 0.0;
    for (const auto& f : members_) {
      const double v = f.at(domain_, p);
      c.min_member = std::min(c.min_member, v);
      sum += v;
    }
    c.max_sum_error = std::max(c.max_sum_error, std::fabs(sum - 1.0));
  }
  return c;
}

std::vector<Point> validation_points(const Domain& domain, std::size_t target) {
  if (is_discrete(domain)) {
    auto all = discrete_points(domain);
    if (all.size() <= target) return all;
    std::vector<Point> picked;
    const std::size_t stride = (all.size() + target - 1) / target;
    for (std::size_t i = 0; i < all.size(); i += stride) picked.push_back(all[i]);
    picked.push_back(all.back());
    return picked;
  }
  std::vector<Point> points;
  if (const auto* iv = std::get_if<Interval>(&domain)) {
    const std::size_t n = std::max<std::size_t>(target, 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(n - 1);
      points.push_back({iv->a + (iv->b - iv->a) * u, 0.0});
    }
    return points;
  }
  const auto& r = std::get<Rectangle>(domain);
  const auto side = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(target)))));
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      const double u = static_cast<double>(i) / static_cast<double>(side - 1);
      const double v = static_cast<double>(j) / static_cast<double>(side - 1);
      points.push_back({r.a + (r.b - r.a) * u, r.c + (r.d - r.c) * v});
    }
  return points;
}

}  // namespace holdref
