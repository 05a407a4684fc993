#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holdref/function_spec.hpp"
#include "holdref/functional.hpp"
#include "holdref/holder.hpp"
#include "holdref/partition.hpp"
#include "holdref/quadrature.hpp"

namespace holdref {

enum class FuzzCase {
  Discrete1D,
  Discrete2D,
  Integral1D,
  Integral2D,
  CornerBounds,
  Reversed1D,  // 0 < p < 1: checks lhs >= classical lower bound
};

std::string_view to_string(FuzzCase c) noexcept;
FuzzCase parse_fuzz_case(std::string_view name);

/// Random-instance search configuration.
///
/// Trial i draws from std::mt19937_64 seeded through std::seed_seq with the
/// 32-bit halves of (seed, i); reals come from the top 53 bits of each
/// output. Both are fully specified by the C++ standard, so summaries are
/// identical on every conforming platform.
struct FuzzConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  FuzzCase fuzz_case = FuzzCase::Discrete1D;
  std::size_t n_min = 1;
  std::size_t n_max = 16;
  std::size_t m_min = 1;
  std::size_t m_max = 16;
  double p_min = 1.1;
  double p_max = 10.0;
  double value_min = 1e-3;  // values are log-uniform on [value_min, value_max]
  double value_max = 10.0;
  double relative_tolerance = kChainTolerance;
  /// Rule for integral cases. The chain holds exactly for any rule with
  /// positive weights, so a coarse one suffices.
  QuadratureRule rule{QuadratureFamily::GaussLegendre, 4, 3};
};

/// Fills in the reversed-regime p range when left at the standard default
/// and checks every range. Throws Error(InvalidArgument).
FuzzConfig normalized(FuzzConfig cfg);

struct TightnessStats {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  std::uint64_t count = 0;
};

struct FuzzSummary {
  FuzzCase fuzz_case = FuzzCase::Discrete1D;
  std::uint64_t seed = 0;
  std::uint64_t trials_run = 0;
  std::uint64_t violations = 0;
  std::uint64_t errors = 0;  // trials that raised a numeric error
  double min_relative_slack = 0.0;
  std::uint64_t worst_trial = 0;
  std::string worst_instance;  // JSON
  TightnessStats tightness;

  /// Canonical JSON with 17 significant digits; the determinism contract is
  /// stated on this string.
  std::string to_json() const;
};

FuzzSummary fuzz_chain(const FuzzConfig& cfg);

/// Random-instance tightness statistics; chain cases only.
FuzzSummary tightness_stats(const FuzzConfig& cfg);

/// One explicit chain instance.
struct ChainInstance {
  Functional functional;
  FunctionSpec w;
  FunctionSpec f;
  FunctionSpec g;
  ConjugateExponents exps;
  Partition partition;
};

/// Tightness statistics over explicit instances.
TightnessStats tightness_stats(std::span<const ChainInstance> instances);

}  // namespace holdref
