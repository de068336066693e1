#include <cmath>
#include <string>

#include "dualmap/witness.hpp"

namespace dualmap {

namespace {

double sign_of(double v) { return v > 0.0 ? 1.0 : -1.0; }

}  // namespace

Witness<LpSpace> witness_thm31(const LpSpace& space, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& w, std::optional<Eigen::Index> m) {
  lp::check_finite(x);
  lp::check_finite(w);
  if (x.size() != w.size()) throw DimensionMismatch("x and w differ in dimension");
  Eigen::Index idx = 0;
  if (m) {
    idx = *m;
    if (idx < 0 || idx >= w.size())
      throw DomainError("coordinate index " + std::to_string(idx) + " out of range");
  } else {
    w.cwiseAbs().maxCoeff(&idx);
  }
  const double wm = w(idx);
  if (wm == 0.0) throw HypothesisError("w_m != 0");

  Witness<LpSpace> out{"thm31", space, {}, {}, 0.0, BoundKind::positive, {}};
  out.query.base = {x, space.duality(x)};
  out.query.candidate = w;

  const double dir = sign_of(wm);
  out.curve = ProbeCurve<LpSpace>{
      "x+t*sign(w_m)*e_m",
      [space, x, idx, dir](double t) {
        Eigen::VectorXd z = x;
        z(idx) += dir * t;
        return GraphPair<LpSpace>{z, space.duality(z)};
      },
      1.0};

  const bool origin = (x.array() == 0.0).all();
  if (origin || space.p == 2.0) {
    out.bound = std::abs(wm) / 2;
    out.kind = BoundKind::exact;
  } else {
    out.note = "general base point: limit |w_m|/(1 + C) with C the slope of J along e_m";
    if (space.p < 2.0 && x(idx) == 0.0)
      out.note = "x_m = 0 with p < 2: J is not Lipschitz along e_m and the quotient decays to 0";
  }
  return out;
}

Witness<LpSpace> witness_thm32(const LpSpace& space, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y) {
  lp::check_finite(x);
  lp::check_finite(y);
  const Eigen::VectorXd jx = space.duality(x);
  const double s = space.pairing(jx, y);
  if (s == 0.0) throw HypothesisError("<J(x), y> != 0");

  Witness<LpSpace> out{"thm32", space, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {x, jx};
  out.query.second_dual = y;
  out.query.candidate = Eigen::VectorXd::Zero(x.size());
  // (1 - sign(s) t) x: shrink toward 0 when <J(x), y> > 0, grow otherwise.
  out.curve = scaling_curve<LpSpace>(out.query.base, s > 0 ? -1 : 1,
                                     s > 0 ? "(1-t)x" : "(1+t)x");
  out.bound = std::abs(s) / (2 * space.primal_norm(x));
  return out;
}

Witness<LpSpace> witness_thm33(const LpSpace& space, const Eigen::VectorXd& x, double a) {
  lp::check_finite(x);
  if (!(a > 0.0) || !std::isfinite(a)) throw HypothesisError("a > 0");
  if (a == 1.0) throw HypothesisError("a != 1");
  const double nx = space.primal_norm(x);
  if (nx == 0.0) throw HypothesisError("x != theta");

  Witness<LpSpace> out{"thm33", space, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {x, space.duality(x)};
  out.query.second_dual = x;
  out.query.candidate = a * out.query.base.dual;
  out.curve = scaling_curve<LpSpace>(out.query.base, a > 1 ? 1 : -1,
                                     a > 1 ? "(1+t)x" : "(1-t)x");
  out.bound = std::abs(a - 1) * nx / 2;
  return out;
}

}  // namespace dualmap
