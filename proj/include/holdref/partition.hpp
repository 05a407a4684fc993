#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holdref/domain.hpp"
#include "holdref/function_spec.hpp"

namespace holdref {

enum class PartitionKind {
  LinearPair,            // (b-t)/(b-a), (t-a)/(b-a) on an interval
  DiscretePair,          // k/n, (n-k)/n on {1..n}
  BilinearQuad,          // four bilinear corner weights on a rectangle
  DiscreteBilinearQuad,  // kl/(nm), (n-k)l/(nm), (n-k)(m-l)/(nm), k(m-l)/(nm)
  Uniform,               // m constant members 1/m, any domain
  Custom,
};

std::string_view to_string(PartitionKind kind) noexcept;
PartitionKind parse_partition_kind(std::string_view name);

inline constexpr double kPartitionTolerance = 1e-9;

/// Ordered family of nonnegative weight functions summing to one pointwise.
class Partition {
 public:
  /// Built-in family. `m` is required for Uniform and ignored otherwise.
  static Partition make(PartitionKind kind, const Domain& domain,
                        std::optional<int> m = std::nullopt);

  /// User-supplied members; checked on a sampling grid of the domain.
  static Partition from_members(const Domain& domain, std::vector<FunctionSpec> members,
                                double tolerance = kPartitionTolerance);

  PartitionKind kind() const noexcept { return kind_; }
  const Domain& domain() const noexcept { return domain_; }
  const std::vector<FunctionSpec>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  /// Member values at one point, in member order.
  std::vector<double> weights_at(Point p) const;

  struct Check {
    double max_sum_error = 0.0;  // max |sum_i alpha_i - 1|
    double min_member = 0.0;     // min alpha_i
  };
  /// Worst-case invariant residuals over `points`.
  Check check(std::span<const Point> points) const;

 private:
  Partition(PartitionKind kind, Domain domain, std::vector<FunctionSpec> members)
      : kind_(kind), domain_(std::move(domain)), members_(std::move(members)) {}

  PartitionKind kind_ = PartitionKind::Custom;
  Domain domain_;
  std::vector<FunctionSpec> members_;
};

/// Points used to validate partitions: every point of a discrete domain
/// (capped at `target`, evenly strided), or a uniform grid including the
/// boundary for continuous domains.
std::vector<Point> validation_points(const Domain& domain, std::size_t target = 1000);

}  // namespace holdref
