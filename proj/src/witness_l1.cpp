#include <cmath>
#include <limits>
#include <string>

#include "dualmap/witness.hpp"

namespace dualmap {

namespace {

using l1::L1Function;
using l1::LinftySelection;
using l1::SubsetMask;

void check_same(const L1Space& space, const l1::SpacePtr& s) {
  if (!l1::same_space(space.measure, s)) throw DimensionMismatch("element on a different space");
}

void check_mask(const L1Space& space, const SubsetMask& m, const char* name) {
  if (m.size() != space.measure->size())
    throw DimensionMismatch(std::string(name) + " has the wrong length");
  if (!m.any()) throw HypothesisError(std::string(name) + " is nonempty");
}

bool has_zeros(const L1Function& f) { return (f.values.array() == 0.0).any(); }

// The selection of J(h) that is +-||h|| on the sign sets and `rest` times
// ||h|| on the zero set of h.
LinftySelection signed_selection(const L1Function& h, double rest) {
  const double n = l1::l1_norm(h);
  Eigen::VectorXd v(h.size());
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    const double x = h.values(i);
    v(i) = x > 0 ? n : x < 0 ? -n : rest * n;
  }
  return LinftySelection(h.space, std::move(v));
}

}  // namespace

Witness<L1Space> witness_thm45_case1(const L1Space& space, const L1Function& f,
                                     const LinftySelection& k) {
  check_same(space, f.space);
  check_same(space, k.space);
  if (has_zeros(f)) throw HypothesisError("f has no zeros (J(f) is a singleton)");
  const double s = l1::pairing(k, f);
  if (s == 0.0) throw HypothesisError("<k*, f> != 0");

  Witness<L1Space> out{"thm45_case1", space, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {f, l1::canonical_selection(f)};
  out.query.candidate = k;
  out.curve = scaling_curve<L1Space>(out.query.base, s > 0 ? 1 : -1,
                                     s > 0 ? "(1+t)f" : "(1-t)f");
  out.bound = std::abs(s) / (2 * l1::l1_norm(f));
  return out;
}

Witness<L1Space> witness_thm45_case2(const L1Space& space, const L1Function& f,
                                     const LinftySelection& k, std::optional<SubsetMask> d,
                                     std::optional<double> a) {
  check_same(space, f.space);
  check_same(space, k.space);
  if (has_zeros(f)) throw HypothesisError("f has no zeros (J(f) is a singleton)");
  if (l1::linf_norm(k) == 0.0) throw HypothesisError("k* != theta*");
  const double s = l1::pairing(k, f);
  const double scale = std::max(1.0, l1::linf_norm(k) * l1::l1_norm(f));
  if (std::abs(s) > 1e-9 * scale) throw HypothesisError("<k*, f> = 0");

  const Eigen::ArrayXd fv = f.values.array();
  const Eigen::ArrayXd kv = k.values.array();
  if (!d) {
    Eigen::Index first = 0;
    while (kv(first) == 0.0) ++first;
    d = (fv > 0) == (fv(first) > 0) && (kv > 0) == (kv(first) > 0) && kv != 0.0;
  }
  check_mask(space, *d, "D");
  // One sign cell: f and k* each keep a single sign on D, with k* != 0.
  double fsign = 0, ksign = 0;
  for (Eigen::Index i = 0; i < fv.size(); ++i) {
    if (!(*d)(i)) continue;
    if (kv(i) == 0.0) throw HypothesisError("k* != 0 on D");
    const double fs = fv(i) > 0 ? 1 : -1, ks = kv(i) > 0 ? 1 : -1;
    if (fsign == 0) fsign = fs, ksign = ks;
    if (fs != fsign || ks != ksign) throw HypothesisError("f and k* keep one sign each on D");
  }

  const bool toward_zero = fsign != ksign;
  double window = std::numeric_limits<double>::infinity();
  if (toward_zero) {
    const double reach = (*d).select(fv.abs(), std::numeric_limits<double>::infinity()).minCoeff();
    window = a.value_or(reach);
    if (!(window > 0.0) || window > reach)
      throw HypothesisError("0 < a <= min over D of |f|");
  }

  Witness<L1Space> out{"thm45_case2", space, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {f, l1::canonical_selection(f)};
  out.query.candidate = k;
  const L1Function step(f.space, ksign * d->cast<double>().matrix());
  out.curve = ProbeCurve<L1Space>{
      ksign > 0 ? "f+t*chi_D" : "f-t*chi_D",
      [f, step, window](double t) {
        if (!(t < window)) throw OutsideWindow("t must stay below the window a");
        L1Function h = f + t * step;
        return GraphPair<L1Space>{h, l1::canonical_selection(h)};
      },
      std::isfinite(window) ? window / 2 : 1.0};
  const double md = l1::measure(*space.measure, *d);
  out.bound = std::abs(l1::pairing(k, l1::indicator(f.space, *d))) / (2 * md);
  return out;
}

Witness<L1Space> witness_thm46(const L1Space& space, const LinftySelection& k,
                               std::optional<SubsetMask> d) {
  check_same(space, k.space);
  if (l1::linf_norm(k) == 0.0) throw HypothesisError("k* != theta*");
  const Eigen::ArrayXd kv = k.values.array();
  if (!d) {
    Eigen::Index peak = 0;
    kv.abs().maxCoeff(&peak);
    d = kv(peak) > 0 ? SubsetMask(kv > 0) : SubsetMask(kv < 0);
  }
  check_mask(space, *d, "D");
  const bool pos = (d->select(kv, 1.0) > 0).all();
  const bool neg = (d->select(kv, -1.0) < 0).all();
  if (!pos && !neg) throw HypothesisError("D lies inside {k* > 0} or inside {k* < 0}");
  const double dir = pos ? 1.0 : -1.0;

  Witness<L1Space> out{"thm46", space, {}, {}, 0.0, BoundKind::exact, {}};
  const auto origin = L1Function::zero(space.measure);
  out.query.base = {origin, LinftySelection::zero(space.measure)};
  out.query.candidate = k;
  const L1Function step(space.measure, dir * d->cast<double>().matrix());
  // j(h_t) = sign * ||h_t|| on D and -sign * ||h_t|| off D.
  out.curve = ProbeCurve<L1Space>{
      pos ? "t*chi_D" : "-t*chi_D",
      [step, dir](double t) {
        L1Function h = t * step;
        return GraphPair<L1Space>{h, signed_selection(h, -dir)};
      },
      1.0};
  const double md = l1::measure(*space.measure, *d);
  out.bound = std::abs(l1::pairing(k, l1::indicator(space.measure, *d))) / (2 * md);
  return out;
}

Witness<L1Space> witness_thm47(const L1Space& space, const L1Function& f,
                               std::optional<SubsetMask> d, std::optional<double> a) {
  check_same(space, f.space);
  const Eigen::ArrayXd fv = f.values.array();
  if ((fv < 0).any()) throw HypothesisError("f in the positive cone");
  if (!(fv > 0).any()) throw HypothesisError("f != theta");
  if (!d) {
    Eigen::Index peak = 0;
    fv.maxCoeff(&peak);
    d = l1::mask_from_indices(fv.size(), {peak});
  }
  check_mask(space, *d, "D");
  const double reach = d->select(fv, std::numeric_limits<double>::infinity()).minCoeff();
  const double window = a.value_or(reach / 2);
  if (!(window > 0.0) || !(window < reach)) throw HypothesisError("0 < a < f on D");

  Witness<L1Space> out{"thm47", space, {}, {}, 0.0, BoundKind::exact, {}};
  // f* = ||f|| on {f > 0} and 0 on {f = 0}; the same shape is kept along h_t.
  const LinftySelection fstar = signed_selection(f, 0.0);
  out.query.base = {f, fstar};
  out.query.second_dual = f;
  out.query.candidate = -1.0 * fstar;
  const L1Function step(f.space, d->cast<double>().matrix());
  const SubsetMask support = fv > 0;
  out.curve = ProbeCurve<L1Space>{
      "f-t*chi_D",
      [f, step, support, window](double t) {
        if (!(t < window)) throw OutsideWindow("t must stay below the window a");
        L1Function h = f - t * step;
        const double n = l1::l1_norm(h);
        return GraphPair<L1Space>{
            h, LinftySelection(h.space, support.select(n, Eigen::ArrayXd::Zero(h.size())).matrix())};
      },
      window / 2};
  out.bound = l1::l1_norm(f);
  return out;
}

Witness<L1Space> witness_cor48(const L1Space& space, const L1Function& f,
                               const LinftySelection& u, std::optional<SubsetMask> e) {
  check_same(space, f.space);
  check_same(space, u.space);
  if (!(f.values.array() > 0).all()) throw HypothesisError("f > 0 at every point");
  const double nf = l1::l1_norm(f);
  const Eigen::ArrayXd uv = u.values.array();
  if (!(uv > nf).all()) throw HypothesisError("u* > J(f) = ||f||_1 at every point");
  if (!e) {
    Eigen::Index peak = 0;
    uv.maxCoeff(&peak);
    e = l1::mask_from_indices(uv.size(), {peak});
  }
  check_mask(space, *e, "E");
  const double b = e->select(uv, std::numeric_limits<double>::infinity()).minCoeff() - nf;

  Witness<L1Space> out{"cor48", space, {}, {}, 0.0, BoundKind::lower, {}};
  out.query.base = {f, l1::canonical_selection(f)};
  out.query.second_dual = f;
  out.query.candidate = u;
  const L1Function step(f.space, e->cast<double>().matrix());
  out.curve = ProbeCurve<L1Space>{
      "f+t*chi_E",
      [f, step](double t) {
        L1Function h = f + t * step;
        return GraphPair<L1Space>{h, l1::canonical_selection(h)};
      },
      1.0};
  out.bound = b / 2;
  out.note = "limit is (mean of u* over E - ||f||_1)/2, equal to the bound when u* is constant on E";
  return out;
}

}  // namespace dualmap
