#ifndef DUALMAP_WITNESS_HPP
#define DUALMAP_WITNESS_HPP

// Catalog of non-membership witnesses: each builder checks the hypotheses of
// one result, then returns the query, the probe curve the proof walks along,
// and the limit the proof computes for it. Hypothesis failures throw
// HypothesisError naming the violated condition.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dualmap/coderivative.hpp"
#include "dualmap/spaces.hpp"

namespace dualmap {

template <class Space>
struct Witness {
  std::string theorem;
  Space space;
  CoderivativeQuery<Space> query;
  ProbeCurve<Space> curve;
  double bound = 0.0;
  BoundKind kind = BoundKind::exact;
  std::string note;
};

using AnyWitness = std::variant<Witness<LpSpace>, Witness<L1Space>, Witness<C01Space>>;

/// Known theorem ids, in catalog order.
const std::vector<std::string>& theorem_ids();
/// "lp", "l1" or "c01"; throws DomainError for an unknown id.
std::string theorem_space(const std::string& theorem);

// ---- l_p ------------------------------------------------------------------

/// Candidate w at (x, J(x)) with y** = 0, probed along x + sign(w_m) t e_m.
/// `m` defaults to the index of the largest |w_m|.
Witness<LpSpace> witness_thm31(const LpSpace& space, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& w, std::optional<Eigen::Index> m = {});

/// Candidate 0 with y** = y; needs <J(x), y> != 0.
Witness<LpSpace> witness_thm32(const LpSpace& space, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y);

/// Candidate a J(x) with y** = x; needs x != 0, a > 0, a != 1.
Witness<LpSpace> witness_thm33(const LpSpace& space, const Eigen::VectorXd& x, double a);

// ---- L_1 ------------------------------------------------------------------

/// f without zeros, <k*, f> != 0; probed along (1 +- t) f.
Witness<L1Space> witness_thm45_case1(const L1Space& space, const l1::L1Function& f,
                                     const l1::LinftySelection& k);

/// f without zeros, <k*, f> = 0. D must sit inside one of the four sign
/// cells of (f, k*); h_t = f + sign(k*) t chi_D. When that moves f toward 0
/// the window is t < a with a <= min_D |f|.
Witness<L1Space> witness_thm45_case2(const L1Space& space, const l1::L1Function& f,
                                     const l1::LinftySelection& k,
                                     std::optional<l1::SubsetMask> d = {},
                                     std::optional<double> a = {});

/// Base (0, 0*), candidate k* != 0*, D inside {k* > 0} or {k* < 0}.
Witness<L1Space> witness_thm46(const L1Space& space, const l1::LinftySelection& k,
                               std::optional<l1::SubsetMask> d = {});

/// f >= 0, f != 0, candidate -f* with f* = ||f|| on {f > 0}, D inside {f > a}.
Witness<L1Space> witness_thm47(const L1Space& space, const l1::L1Function& f,
                               std::optional<l1::SubsetMask> d = {},
                               std::optional<double> a = {});

/// f > 0 everywhere, u* > ||f|| everywhere; probed along f + t chi_E. The
/// bound b/2 uses b = min_E u* - ||f||, a lower bound for the limit that is
/// attained when u* is constant on E. E defaults to the argmax of u*.
Witness<L1Space> witness_cor48(const L1Space& space, const l1::L1Function& f,
                               const l1::LinftySelection& u,
                               std::optional<l1::SubsetMask> e = {});

// ---- C[0,1] ---------------------------------------------------------------

/// f >= 0, f != 0, mu in J(f) (canonical by default); candidate 0*, y** = f.
Witness<C01Space> witness_thm53(const c01::PwlFunction& f,
                                std::optional<c01::RcaMeasure> mu = {});

/// <lambda, f> != 0; candidate lambda, y** = 0.
Witness<C01Space> witness_thm54(const c01::PwlFunction& f, const c01::RcaMeasure& lambda,
                                std::optional<c01::RcaMeasure> mu = {});

/// lambda[0,1] != 0; constant shifts of f in the direction of the sign of
/// lambda[0,1]. f = 0 is allowed.
Witness<C01Space> witness_thm55(const c01::PwlFunction& f, const c01::RcaMeasure& lambda);

/// f, u >= 0, ||u|| > ||f||, points shared by M(f) and M(u) (all shared
/// breakpoints by default); lambda in J(u) and mu in J(f) on those points.
Witness<C01Space> witness_thm56(const c01::PwlFunction& f, const c01::PwlFunction& u,
                                std::optional<std::vector<double>> points = {});

/// thm56 for nondecreasing f, u >= 0, using the right endpoint.
Witness<C01Space> witness_cor57(const c01::PwlFunction& f, const c01::PwlFunction& u);

/// f >= 0, f != 0, mu in J(f), c > 0, c != 1; candidate c mu, y** = f.
Witness<C01Space> witness_thm58(const c01::PwlFunction& f, double c,
                                std::optional<c01::RcaMeasure> mu = {});

/// Runs the default schedule (or `schedule`) on a witness.
template <class Space>
NonMembershipCertificate certify(const Witness<Space>& w, std::optional<Schedule> schedule = {},
                                 const EngineTolerances& tol = {}) {
  return certify_nonmembership(w.space, w.query, w.curve, w.bound, w.kind,
                               schedule.value_or(default_schedule(w.curve.t_max)), tol);
}

inline NonMembershipCertificate certify(const AnyWitness& w, std::optional<Schedule> schedule = {},
                                        const EngineTolerances& tol = {}) {
  return std::visit([&](const auto& v) { return certify(v, schedule, tol); }, w);
}

}  // namespace dualmap

#endif  // DUALMAP_WITNESS_HPP
