#ifndef DUALMAP_CODERIVATIVE_HPP
#define DUALMAP_CODERIVATIVE_HPP

// Regular (Frechet) coderivative of the duality mapping, probed along curves
// in gph J. For a query (x, x*), y**, z* the quotient at (u, u*) is
//
//   ( <z*, u - x> - <y**, u* - x*> ) / ( ||u - x|| + ||u* - x*||_* ),
//
// and z* is in the coderivative only if its limsup as (u, u*) -> (x, x*) is
// at most 0. A single curve whose quotient settles at a positive value is
// therefore a certificate of non-membership. Nothing here ever concludes
// membership.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualmap/errors.hpp"

namespace dualmap {

template <class Space>
struct GraphPair {
  typename Space::Primal point;
  typename Space::Dual dual;
};

template <class Space>
struct CoderivativeQuery {
  GraphPair<Space> base;
  /// y**: empty for the zero functional, otherwise a primal element acting on
  /// X* by the canonical pairing.
  std::optional<typename Space::Primal> second_dual;
  typename Space::Dual candidate;
};

template <class Space>
struct ProbeCurve {
  std::string id;
  /// Valid on (0, t_max]; may throw OutsideWindow beyond it.
  std::function<GraphPair<Space>(double)> at;
  double t_max = 1.0;
};

struct Schedule {
  double t0 = 0.25;
  double ratio = 0.5;
  int steps = 24;
};

/// Smallest default sample. Below it, cancellation in ||u - x|| costs more
/// than the settle tolerance for elements of unit scale.
inline constexpr double kScheduleFloor = 1e-9;

/// t0 = min(0.25, t_max / 2), 24 steps, ratio 1/2; a narrow window widens the
/// ratio so the last sample stays at or above kScheduleFloor.
inline Schedule default_schedule(double t_max) {
  Schedule s{std::min(0.25, t_max / 2), 0.5, 24};
  if (s.t0 * std::pow(s.ratio, s.steps - 1) < kScheduleFloor && s.t0 > kScheduleFloor)
    s.ratio = std::min(0.9, std::pow(kScheduleFloor / s.t0, 1.0 / (s.steps - 1)));
  return s;
}

struct EngineTolerances {
  double settle = 1e-6;       // spread of the last three quotients
  double membership = 1e-9;   // every probe pair must lie in gph J
  double cert = 1e-6;         // estimated limit vs claimed lower bound
  double closed_form = 1e-5;  // estimated limit vs an exact closed form
};

inline constexpr std::size_t kTailLength = 3;

struct LimitEstimate {
  std::vector<double> t;
  std::vector<double> quotients;
  double limit = 0.0;
  double spread = 0.0;
  bool settled = false;
  bool membership_ok = true;
  bool converging = true;
  bool t0_shrunk = false;
  double t0_used = 0.0;
  /// Largest observed ||u* - x*||_* / ||u - x||; an empirical slope constant
  /// for J along the curve.
  double max_dual_slope = 0.0;
  std::string note;

  std::span<const double> tail() const {
    const auto n = std::min(kTailLength, quotients.size());
    return std::span<const double>(quotients).last(n);
  }
  bool tail_positive() const {
    const auto tl = tail();
    return !tl.empty() && std::all_of(tl.begin(), tl.end(), [](double q) { return q > 0.0; });
  }
  /// Quotients over the last half of the schedule move in one direction.
  bool tail_monotone() const {
    const std::size_t half = quotients.size() / 2;
    int dir = 0;
    for (std::size_t k = half + 1; k < quotients.size(); ++k) {
      const double d = quotients[k] - quotients[k - 1];
      if (d == 0.0) continue;
      const int s = d > 0 ? 1 : -1;
      if (dir != 0 && s != dir) return false;
      dir = s;
    }
    return true;
  }
};

template <class Space>
void validate_query(const Space& space, const CoderivativeQuery<Space>& q, double tol = 1e-9) {
  if (!space.is_member(q.base.dual, q.base.point, tol))
    throw DomainError("base dual element is not in J(base point)");
  if (q.second_dual && !space.admits_second_dual(*q.second_dual))
    throw DomainError("second-dual argument is not representable (must lie in the positive cone)");
}

template <class Space>
double quotient(const Space& space, const CoderivativeQuery<Space>& q, const GraphPair<Space>& pair) {
  const typename Space::Primal du = pair.point - q.base.point;
  const typename Space::Dual dv = pair.dual - q.base.dual;
  const double denom = space.primal_norm(du) + space.dual_norm(dv);
  if (!(denom > 0.0)) throw DegeneratePair("probe pair coincides with the base point");
  double num = space.pairing(q.candidate, du);
  if (q.second_dual) num -= space.pairing(dv, *q.second_dual);
  return num / denom;
}

/// Samples the quotient at t_k = t0 ratio^k and reports the mean of the last
/// three as the limit. If t0 lies outside the curve's window it is pulled
/// inside, and shrunk further if the curve still refuses the first sample.
template <class Space>
LimitEstimate estimate_limit(const Space& space, const CoderivativeQuery<Space>& q,
                             const ProbeCurve<Space>& curve, Schedule schedule,
                             const EngineTolerances& tol = {}) {
  if (!(schedule.ratio > 0.0 && schedule.ratio < 1.0))
    throw DomainError("schedule ratio must lie in (0,1)");
  if (schedule.steps < 8) throw DomainError("schedule needs at least 8 steps");
  if (!(schedule.t0 > 0.0)) throw DomainError("schedule t0 must be positive");

  LimitEstimate est;
  if (schedule.t0 > curve.t_max) {
    schedule.t0 = curve.t_max;
    est.t0_shrunk = true;
    est.note = "t0 clamped to the curve window";
  }

  std::vector<double> distances;
  for (int attempt = 0;; ++attempt) {
    est.t.clear();
    est.quotients.clear();
    distances.clear();
    est.membership_ok = true;
    est.max_dual_slope = 0.0;
    try {
      double t = schedule.t0;
      for (int k = 0; k < schedule.steps; ++k, t *= schedule.ratio) {
        const auto pair = curve.at(t);
        if (!space.is_member(pair.dual, pair.point, tol.membership)) {
          if (est.membership_ok) est.note = "probe pair left gph J at t = " + std::to_string(t);
          est.membership_ok = false;
        }
        const typename Space::Primal du = pair.point - q.base.point;
        const typename Space::Dual dv = pair.dual - q.base.dual;
        const double dp = space.primal_norm(du);
        const double dd = space.dual_norm(dv);
        if (dp > 0.0) est.max_dual_slope = std::max(est.max_dual_slope, dd / dp);
        est.t.push_back(t);
        est.quotients.push_back(quotient(space, q, pair));
        distances.push_back(dp + dd);
      }
      break;
    } catch (const OutsideWindow&) {
      if (attempt >= 64) throw;
      schedule.t0 *= schedule.ratio;
      est.t0_shrunk = true;
      est.note = "t0 shrunk to stay inside the curve window";
    }
  }
  est.t0_used = schedule.t0;

  const auto tl = est.tail();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (double v : tl) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  est.limit = sum / static_cast<double>(tl.size());
  est.spread = hi - lo;
  est.settled = std::isfinite(est.limit) && est.spread <= tol.settle;
  const auto m = distances.size();
  est.converging = m >= 2 && distances[m - 1] < distances[m - 2];
  return est;
}

/// How the claimed bound relates to the limit: the proof's exact value, a
/// lower estimate only, or bare positivity.
enum class BoundKind { exact, lower, positive };
enum class Verdict { certified, rejected, inconclusive };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower: return "lower";
    case BoundKind::positive: return "positive";
  }
  return "?";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::rejected: return "rejected";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct NonMembershipCertificate {
  std::string curve_id;
  LimitEstimate estimate;
  double claimed_bound = 0.0;
  BoundKind kind = BoundKind::exact;
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  EngineTolerances tolerances;
};

/// Verdict rules applied to a finished estimate. Split out so a stored
/// certificate can be judged again without the curve. A curve that shows no
/// positive limit is inconclusive: the engine never concludes membership.
/// Rejected means the samples contradict the claimed bound.
inline Verdict judge(const LimitEstimate& est, double bound, BoundKind kind,
                     const EngineTolerances& tol, std::string* reason = nullptr) {
  auto say = [&](const char* r) {
    if (reason) *reason = r;
  };
  if (!est.membership_ok) return say("probe pair left the graph"), Verdict::inconclusive;
  if (!est.settled) return say("tail did not settle"), Verdict::inconclusive;
  if (!est.converging) return say("curve does not approach the base point"), Verdict::inconclusive;
  if (!est.tail_positive() || !(est.limit > tol.cert))
    return say("no positive limit along this curve"), Verdict::inconclusive;
  switch (kind) {
    case BoundKind::positive:
      break;
    case BoundKind::exact:
      if (std::abs(est.limit - bound) > tol.closed_form)
        return say("limit differs from the closed form"), Verdict::rejected;
      [[fallthrough]];
    case BoundKind::lower:
      if (est.limit < bound - tol.cert) return say("limit below the claimed bound"), Verdict::rejected;
      break;
  }
  say("limit is positive along the probe curve");
  return Verdict::certified;
}

template <class Space>
NonMembershipCertificate certify_nonmembership(const Space& space, const CoderivativeQuery<Space>& q,
                                               const ProbeCurve<Space>& curve, double claimed_bound,
                                               BoundKind kind, const Schedule& schedule,
                                               const EngineTolerances& tol = {}) {
  NonMembershipCertificate cert;
  cert.curve_id = curve.id;
  cert.claimed_bound = kind == BoundKind::positive ? 0.0 : claimed_bound;
  cert.kind = kind;
  cert.tolerances = tol;
  cert.estimate = estimate_limit(space, q, curve, schedule, tol);
  cert.verdict = judge(cert.estimate, cert.claimed_bound, kind, tol, &cert.reason);
  return cert;
}

struct RecheckResult {
  bool ok = true;
  std::string reason;
};

/// Soundness check on stored samples alone: a certified verdict needs every
/// tail quotient positive and at least bound - 2 cert_tol, and a tail whose
/// mean and spread agree with the recorded estimate.
inline RecheckResult recheck_certificate(std::span<const double> quotients, double limit,
                                         double bound, BoundKind kind, Verdict verdict,
                                         const EngineTolerances& tol) {
  if (verdict != Verdict::certified) return {true, "not certified; nothing to re-verify"};
  if (quotients.size() < kTailLength) return {false, "fewer samples than the tail length"};
  const auto tl = quotients.last(kTailLength);
  const double floor = kind == BoundKind::positive ? 0.0 : bound - 2.0 * tol.cert;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (double v : tl) {
    if (!(v > 0.0)) return {false, "non-positive tail quotient"};
    if (v < floor) return {false, "tail quotient below bound - 2 cert_tol"};
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  if (hi - lo > tol.settle) return {false, "tail spread exceeds the settle tolerance"};
  const double mean = sum / static_cast<double>(tl.size());
  if (std::abs(mean - limit) > 1e-12 * std::max(1.0, std::abs(limit)))
    return {false, "recorded limit does not match the tail mean"};
  return {true, "ok"};
}

struct SearchResult {
  std::string curve_id;
  double best_limit = -std::numeric_limits<double>::infinity();
  bool settled = false;
  std::vector<LimitEstimate> estimates;
};

/// Runs every curve in the family and keeps the largest estimated limit. A
/// positive best limit is only a lead; certify it separately.
template <class Space>
SearchResult falsify_membership_search(const Space& space, const CoderivativeQuery<Space>& q,
                                       const std::vector<ProbeCurve<Space>>& family,
                                       const Schedule& schedule, const EngineTolerances& tol = {}) {
  if (family.empty()) throw DomainError("empty curve family");
  SearchResult out;
  for (const auto& curve : family) {
    auto est = estimate_limit(space, q, curve, schedule, tol);
    if (est.limit > out.best_limit) {
      out.best_limit = est.limit;
      out.curve_id = curve.id;
      out.settled = est.settled;
    }
    out.estimates.push_back(std::move(est));
  }
  return out;
}

/// (1 + sign t) x with dual (1 + sign t) x*, inside gph J by homogeneity.
template <class Space>
ProbeCurve<Space> scaling_curve(const GraphPair<Space>& base, int sign, std::string id,
                                double t_max = 0.5) {
  return ProbeCurve<Space>{
      std::move(id),
      [base, sign](double t) {
        const double s = 1.0 + sign * t;
        return GraphPair<Space>{typename Space::Primal(s * base.point),
                                typename Space::Dual(s * base.dual)};
      },
      t_max};
}

}  // namespace dualmap

#endif  // DUALMAP_CODERIVATIVE_HPP
