#include "holdref/holder.hpp"

#include <algorithm>
#include <cmath>

#include "holdref/error.hpp"

namespace holdref {

double conjugate_of(double p) {
  if (p == 1.0) throw Error(ErrorKind::InvalidArgument, "p = 1 has no conjugate exponent");
  if (p == 0.0) throw Error(ErrorKind::InvalidArgument, "p = 0 has no conjugate exponent");
  if (!std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "p must be finite");
  return p / (p - 1.0);
}

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::Standard ? "standard" : "reversed";
}

ConjugateExponents ConjugateExponents::from_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorKind::InvalidArgument, "p must be finite and > 0 (p < 0 is not supported)");
  if (std::fabs(p - 1.0) < kMinDistanceFromOne)
    throw Error(ErrorKind::InvalidArgument, "p is too close to 1; q would overflow");
  return ConjugateExponents(p, conjugate_of(p));
}

ConjugateExponents ConjugateExponents::from_pair(double p, double q) {
  static_cast<void>(from_p(p));  // validates p
  if (std::fabs(1.0 / p + 1.0 / q - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "1/p + 1/q must equal 1");
  return ConjugateExponents(p, q);
}

YoungGap young_gap(double a, double b, double t) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorKind::InvalidArgument, "Young's inequality needs a, b > 0");
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "Young's inequality needs t in [0, 1]");
  YoungGap y;
  y.lhs = std::pow(a, t) * std::pow(b, 1.0 - t);
  y.rhs = t * a + (1.0 - t) * b;
  y.gap = y.rhs - y.lhs;
  return y;
}

namespace {

struct Sampled {
  std::vector<double> w;
  std::vector<double> f;
  std::vector<double> g;
};

Sampled sample_all(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                   const FunctionSpec& g) {
  Sampled s{A.sample(w), A.sample(f), A.sample(g)};
  for (auto* v : {&s.w, &s.f, &s.g})
    for (double& x : *v) x = std::fabs(x);
  return s;
}

double checked_pow(double base, double exponent, const char* what) {
  const double v = std::pow(base, exponent);
  if (!std::isfinite(v))
    throw Error(ErrorKind::NonFinite, std::string("non-finite intermediate in ") + what);
  return v;
}

/// Everything except the per-member terms.
BoundReport base_report(const Functional& A, const Sampled& s, const ConjugateExponents& exps,
                        std::vector<double>& wfp, std::vector<double>& wgq) {
  const double p = exps.p();
  const double q = exps.q();
  const auto weights = A.weights();
  const std::size_t n = s.f.size();

  std::vector<double> wfg(n);
  wfp.resize(n);
  wgq.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    wfg[i] = s.w[i] * s.f[i] * s.g[i];
    wfp[i] = s.w[i] * std::pow(s.f[i], p);
    if (q < 0.0 && s.g[i] == 0.0 && weights[i] > 0.0 && s.w[i] > 0.0)
      throw Error(ErrorKind::InvalidArgument,
                  "g vanishes at a node while q < 0; the reversed bound needs g > 0");
    wgq[i] = s.w[i] == 0.0 ? 0.0 : s.w[i] * std::pow(s.g[i], q);
  }

  BoundReport r;
  r.regime = exps.regime();
  r.p = p;
  r.q = q;
  r.lhs = A.apply(wfg);
  const double afp = A.apply(wfp);
  const double agq = A.apply(wgq);
  if (q < 0.0 && !(agq > 0.0))
    throw Error(ErrorKind::InvalidArgument, "reversed Hoelder bound needs A(w g^q) > 0");
  r.classical = checked_pow(afp, 1.0 / p, "A(w f^p)^(1/p)") *
                checked_pow(agq, 1.0 / q, "A(w g^q)^(1/q)");
  r.refined = r.classical;
  return r;
}

void finish(BoundReport& r) {
  r.slack_refined = r.refined - r.lhs;
  r.refinement_gap = r.classical - r.refined;
  if (r.classical > 0.0) r.tightness = r.refined / r.classical;
}

}  // namespace

BoundReport classical_holder(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                             const FunctionSpec& g, const ConjugateExponents& exps) {
  if (exps.regime() != Regime::Standard)
    throw Error(ErrorKind::RegimeMismatch, "0 < p < 1: use reversed_holder");
  const Sampled s = sample_all(A, w, f, g);
  std::vector<double> wfp, wgq;
  BoundReport r = base_report(A, s, exps, wfp, wgq);
  finish(r);
  return r;
}

BoundReport improved_holder(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                            const FunctionSpec& g, const ConjugateExponents& exps,
                            const Partition& part) {
  if (exps.regime() != Regime::Standard)
    throw Error(ErrorKind::RegimeMismatch, "the refined bound needs p > 1");
  if (part.domain() != A.domain())
    throw Error(ErrorKind::InvalidArgument, "partition domain " + describe(part.domain()) +
                                                " differs from functional domain " +
                                                describe(A.domain()));
  const Sampled s = sample_all(A, w, f, g);
  std::vector<double> wfp, wgq;
  BoundReport r = base_report(A, s, exps, wfp, wgq);

  const std::size_t n = wfp.size();
  std::vector<double> af(n), ag(n);
  r.terms.reserve(part.size());
  double refined = 0.0;
  for (const auto& member : part.members()) {
    std::vector<double> alpha = A.sample(member);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::max(alpha[i], 0.0);
      af[i] = a * wfp[i];
      ag[i] = a * wgq[i];
    }
    const double term = checked_pow(A.apply(af), 1.0 / exps.p(), "refined term") *
                        checked_pow(A.apply(ag), 1.0 / exps.q(), "refined term");
    r.terms.push_back(term);
    refined += term;
  }
  r.refined = refined;
  finish(r);
  return r;
}

BoundReport reversed_holder(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                            const FunctionSpec& g, const ConjugateExponents& exps) {
  if (exps.regime() != Regime::Reversed)
    throw Error(ErrorKind::RegimeMismatch, "p > 1: use classical_holder");
  const Sampled s = sample_all(A, w, f, g);
  std::vector<double> wfp, wgq;
  BoundReport r = base_report(A, s, exps, wfp, wgq);
  finish(r);
  return r;
}

ChainReport chain_from_report(const BoundReport& report, double relative_tolerance) {
  ChainReport c;
  c.bound = report;
  c.lhs = report.lhs;
  c.refined = report.refined;
  c.classical = report.classical;
  const double scale =
      std::max({std::fabs(report.lhs), std::fabs(report.refined), std::fabs(report.classical)});
  if (scale > 0.0) {
    c.lower_slack = (report.refined - report.lhs) / scale;
    c.upper_slack = (report.classical - report.refined) / scale;
  }
  c.min_slack = std::min(c.lower_slack, c.upper_slack);
  c.tolerance = relative_tolerance;
  c.pass = c.min_slack >= -relative_tolerance;
  return c;
}

ChainReport verify_chain(const Functional& A, const FunctionSpec& w, const FunctionSpec& f,
                         const FunctionSpec& g, const ConjugateExponents& exps,
                         const Partition& part, const ChainOptions& options) {
  const BoundReport report = improved_holder(A, w, f, g, exps, part);
  ChainReport c = chain_from_report(report, options.relative_tolerance);
  if (options.quadrature_allowance && A.is_quadrature() && !c.pass) {
    const BoundReport fine = improved_holder(A.refined(), w, f, g, exps, part);
    c.quadrature_error = std::max({std::fabs(fine.lhs - report.lhs),
                                   std::fabs(fine.refined - report.refined),
                                   std::fabs(fine.classical - report.classical)});
    const double scale =
        std::max({std::fabs(report.lhs), std::fabs(report.refined), std::fabs(report.classical)});
    if (scale > 0.0) c.tolerance += 10.0 * c.quadrature_error / scale;
    c.pass = c.min_slack >= -c.tolerance;
  }
  return c;
}

}  // namespace holdref
