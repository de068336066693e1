#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dualmap/witness.hpp"

namespace dualmap {

namespace {

using c01::Atom;
using c01::PwlFunction;
using c01::RcaMeasure;

double member_tol(const PwlFunction& f) {
  const double n = c01::sup_norm(f);
  return 1e-9 * std::max(1.0, n * n);
}

RcaMeasure checked_duality_measure(const PwlFunction& f, std::optional<RcaMeasure> mu) {
  if (!mu) return c01::canonical_duality_measure(f);
  if (!c01::is_duality_member(*mu, f, member_tol(f)).member) throw HypothesisError("mu in J(f)");
  return *mu;
}

void require_positive_cone(const PwlFunction& f, const char* name) {
  if (!f.is_nonnegative()) throw HypothesisError(std::string(name) + " in the positive cone");
}

// sum_j alpha_j (f(s_j) + shift) delta_{s_j} with uniform alpha_j.
RcaMeasure shifted_atoms(const PwlFunction& f, const std::vector<double>& points, double shift) {
  const double alpha = 1.0 / static_cast<double>(points.size());
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (double s : points) atoms.push_back({s, alpha * (f(s) + shift)});
  return RcaMeasure::atomic(std::move(atoms));
}

ProbeCurve<C01Space> shift_curve(const PwlFunction& f, std::vector<double> points, double dir,
                                 double window, std::string id) {
  return ProbeCurve<C01Space>{
      std::move(id),
      [f, points = std::move(points), dir, window](double t) {
        if (!(t < window)) throw OutsideWindow("t must stay below the shift window");
        return GraphPair<C01Space>{f.shifted(dir * t), shifted_atoms(f, points, dir * t)};
      },
      std::isfinite(window) ? window / 2 : 1.0};
}

}  // namespace

Witness<C01Space> witness_thm53(const PwlFunction& f, std::optional<RcaMeasure> mu) {
  require_positive_cone(f, "f");
  if (c01::sup_norm(f) == 0.0) throw HypothesisError("f != theta");
  Witness<C01Space> out{"thm53", {}, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {f, checked_duality_measure(f, std::move(mu))};
  out.query.second_dual = f;
  out.query.candidate = RcaMeasure{};
  out.curve = scaling_curve<C01Space>(out.query.base, -1, "(1-t)f");
  out.bound = c01::sup_norm(f) / 2;
  return out;
}

Witness<C01Space> witness_thm54(const PwlFunction& f, const RcaMeasure& lambda,
                                std::optional<RcaMeasure> mu) {
  if (c01::sup_norm(f) == 0.0) throw HypothesisError("f != theta");
  const double s = c01::pairing(lambda, f);
  if (s == 0.0) throw HypothesisError("<lambda, f> != 0");
  Witness<C01Space> out{"thm54", {}, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {f, checked_duality_measure(f, std::move(mu))};
  out.query.candidate = lambda;
  out.curve = scaling_curve<C01Space>(out.query.base, s > 0 ? 1 : -1,
                                      s > 0 ? "(1+t)f" : "(1-t)f");
  out.bound = std::abs(s) / (2 * c01::sup_norm(f));
  return out;
}

Witness<C01Space> witness_thm55(const PwlFunction& f, const RcaMeasure& lambda) {
  const double mass = lambda.total_mass();
  if (mass == 0.0) throw HypothesisError("lambda[0,1] != 0");
  const double dir = mass > 0 ? 1.0 : -1.0;
  const double n = c01::sup_norm(f);

  // Shift f by dir * t. If f reaches dir * ||f|| the norm grows at those
  // points; otherwise it shrinks at the opposite extreme, which stays the
  // maximum only while t < (||f|| - max(dir f)) / 2.
  std::vector<double> points;
  double window = std::numeric_limits<double>::infinity();
  std::string id = dir > 0 ? "f+t" : "f-t";
  if (n == 0.0) {
    points = {0.0};
  } else {
    const auto reps = c01::maximizing_set(f).representatives();
    for (double s : reps)
      if (dir * f(s) > 0) points.push_back(s);
    if (points.empty()) {
      for (double s : reps) points.push_back(s);
      const double top = dir > 0 ? f.max_value() : -f.min_value();
      window = (n - top) / 2;
      id += " (opposite extreme)";
    }
  }

  Witness<C01Space> out{"thm55", {}, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {f, n == 0.0 ? RcaMeasure{} : shifted_atoms(f, points, 0.0)};
  out.query.candidate = lambda;
  out.curve = shift_curve(f, points, dir, window, id);
  out.bound = std::abs(mass) / 2;
  return out;
}

Witness<C01Space> witness_thm56(const PwlFunction& f, const PwlFunction& u,
                                std::optional<std::vector<double>> points) {
  require_positive_cone(f, "f");
  require_positive_cone(u, "u");
  const double nf = c01::sup_norm(f), nu = c01::sup_norm(u);
  if (nf == 0.0) throw HypothesisError("f != theta");
  if (!(nu > nf)) throw HypothesisError("||u|| > ||f||");
  const auto mf = c01::maximizing_set(f), mu_set = c01::maximizing_set(u);
  if (points) {
    if (points->empty()) throw HypothesisError("at least one shared maximizing point");
    for (double s : *points)
      if (!mf.contains(s) || !mu_set.contains(s))
        throw HypothesisError("point " + std::to_string(s) + " in M(f) and M(u)");
  } else {
    std::vector<double> cand;
    for (double s : f.breakpoints()) cand.push_back(s);
    for (double s : u.breakpoints()) cand.push_back(s);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    points.emplace();
    for (double s : cand)
      if (mf.contains(s) && mu_set.contains(s)) points->push_back(s);
    if (points->empty()) throw HypothesisError("M(u) and M(f) intersect");
  }
  std::sort(points->begin(), points->end());
  if (std::adjacent_find(points->begin(), points->end()) != points->end())
    throw DomainError("repeated shared point");

  Witness<C01Space> out{"thm56", {}, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {f, shifted_atoms(f, *points, 0.0)};
  out.query.second_dual = f;
  out.query.candidate = shifted_atoms(u, *points, 0.0);
  out.curve = shift_curve(f, *points, 1.0, std::numeric_limits<double>::infinity(), "f+t");
  out.bound = (nu - nf) / 2;
  return out;
}

Witness<C01Space> witness_cor57(const PwlFunction& f, const PwlFunction& u) {
  auto nondecreasing = [](const PwlFunction& g) {
    const auto& v = g.values();
    for (Eigen::Index i = 1; i < v.size(); ++i)
      if (v(i) < v(i - 1)) return false;
    return true;
  };
  if (!nondecreasing(f)) throw HypothesisError("f nondecreasing");
  if (!nondecreasing(u)) throw HypothesisError("u nondecreasing");
  auto out = witness_thm56(f, u, std::vector<double>{1.0});
  out.theorem = "cor57";
  return out;
}

Witness<C01Space> witness_thm58(const PwlFunction& f, double c, std::optional<RcaMeasure> mu) {
  if (!(c > 0.0) || !std::isfinite(c)) throw HypothesisError("c > 0");
  if (c == 1.0) throw HypothesisError("c ≠ 1");
  require_positive_cone(f, "f");
  if (c01::sup_norm(f) == 0.0) throw HypothesisError("f != theta");
  Witness<C01Space> out{"thm58", {}, {}, {}, 0.0, BoundKind::exact, {}};
  out.query.base = {f, checked_duality_measure(f, std::move(mu))};
  out.query.second_dual = f;
  out.query.candidate = c * out.query.base.dual;
  out.curve = scaling_curve<C01Space>(out.query.base, c > 1 ? 1 : -1,
                                      c > 1 ? "(1+t)f" : "(1-t)f");
  out.bound = std::abs(c - 1) * c01::sup_norm(f) / 2;
  return out;
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {
      "thm31", "thm32", "thm33", "thm45_case1", "thm45_case2", "thm46", "thm47", "cor48",
      "thm53", "thm54", "thm55", "thm56", "cor57", "thm58"};
  return ids;
}

std::string theorem_space(const std::string& theorem) {
  const auto& ids = theorem_ids();
  const auto it = std::find(ids.begin(), ids.end(), theorem);
  if (it == ids.end()) throw DomainError("unknown theorem id '" + theorem + "'");
  const auto pos = it - ids.begin();
  return pos < 3 ? "lp" : pos < 8 ? "l1" : "c01";
}

}  // namespace dualmap
