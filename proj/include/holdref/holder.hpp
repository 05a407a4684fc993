#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "holdref/function_spec.hpp"
#include "holdref/functional.hpp"
#include "holdref/partition.hpp"

namespace holdref {

/// q = p / (p - 1). Throws for p == 0 and p == 1.
double conjugate_of(double p);

enum class Regime { Standard, Reversed };
std::string_view to_string(Regime regime) noexcept;

/// Exponents with 1/p + 1/q = 1. Standard regime is p > 1, reversed is
/// 0 < p < 1 (so q < 0). Values of p within 1e-6 of 1 are rejected since
/// q blows up there.
class ConjugateExponents {
 public:
  static constexpr double kMinDistanceFromOne = 1e-6;

  static ConjugateExponents from_p(double p);
  /// Checks 1/p + 1/q = 1 to 1e-12.
  static ConjugateExponents from_pair(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  Regime regime() const noexcept { return p_ > 1.0 ? Regime::Standard : Regime::Reversed; }

 private:
  ConjugateExponents(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

struct YoungGap {
  double lhs = 0.0;  // a^t b^(1-t)
  double rhs = 0.0;  // t a + (1-t) b
  double gap = 0.0;  // rhs - lhs
};

YoungGap young_gap(double a, double b, double t);

/// Both sides of the classical and refined Hoelder inequalities for one
/// instance (A, w, f, g, p). All powers act on |w|, |f|, |g|.
struct BoundReport {
  Regime regime = Regime::Standard;
  double p = 0.0;
  double q = 0.0;
  double lhs = 0.0;                // A(w f g)
  double classical = 0.0;          // A(w f^p)^(1/p) A(w g^q)^(1/q)
  std::vector<double> terms;       // A(a_i w f^p)^(1/p) A(a_i w g^q)^(1/q)
  double refined = 0.0;            // sum of terms, or classical without a partition
  double slack_refined = 0.0;      // refined - lhs
  double refinement_gap = 0.0;     // classical - refined
  std::optional<double> tightness; // refined / classical when classical > 0
};

BoundReport classical_holder(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                             const FunctionSpec& g, const ConjugateExponents& exps);

BoundReport improved_holder(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                            const FunctionSpec& g, const ConjugateExponents& exps,
                            const Partition& part);

/// 0 < p < 1: `classical` holds the lower bound, and lhs >= classical.
BoundReport reversed_holder(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                            const FunctionSpec& g, const ConjugateExponents& exps);

inline constexpr double kChainTolerance = 1e-10;

struct ChainOptions {
  double relative_tolerance = kChainTolerance;
  /// For quadrature functionals, widen the tolerance by 10x the change
  /// observed when the panel count is doubled.
  bool quadrature_allowance = true;
};

struct ChainReport {
  double lhs = 0.0;
  double refined = 0.0;
  double classical = 0.0;
  double lower_slack = 0.0;  // (refined - lhs) / scale
  double upper_slack = 0.0;  // (classical - refined) / scale
  double min_slack = 0.0;
  double tolerance = 0.0;    // relative tolerance actually applied
  double quadrature_error = 0.0;
  bool pass = false;
  BoundReport bound;
};

/// Checks lhs <= refined <= classical with relative slack >= -tolerance.
ChainReport verify_chain(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                         const FunctionSpec& g, const ConjugateExponents& exps,
                         const Partition& part, const ChainOptions& options = {});

/// Same check on a finished report; no quadrature allowance.
ChainReport chain_from_report(const BoundReport& report,
                              double relative_tolerance = kChainTolerance);

}  // namespace holdref
