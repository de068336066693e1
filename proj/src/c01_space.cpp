#include "dualmap/c01_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dualmap::c01 {

namespace {

std::vector<double> merged_grid(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  std::vector<double> grid(a.data(), a.data() + a.size());
  grid.insert(grid.end(), b.data(), b.data() + b.size());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_grid(const Eigen::VectorXd& x, const char* what) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i)) || x(i) < 0.0 || x(i) > 1.0)
      throw DomainError(std::string(what) + " outside [0,1]");
    if (i > 0 && !(x(i) > x(i - 1)))
      throw DomainError(std::string(what) + " must be strictly increasing");
  }
}

// Exact integral of the linear interpolant of f over [lo, hi].
double integrate(const PwlFunction& f, double lo, double hi) {
  const auto& bp = f.breakpoints();
  double sum = 0.0;
  double left = lo;
  double fl = f(lo);
  for (Eigen::Index i = 0; i < bp.size(); ++i) {
    if (bp(i) <= lo) continue;
    if (bp(i) >= hi) break;
    const double fr = f.values()(i);
    sum += 0.5 * (fl + fr) * (bp(i) - left);
    left = bp(i);
    fl = fr;
  }
  sum += 0.5 * (fl + f(hi)) * (hi - left);
  return sum;
}

PiecewiseConstant combine(const PiecewiseConstant& a, const PiecewiseConstant& b, double sign) {
  if (a.empty() && b.empty()) return {};
  if (b.empty()) return a;
  if (a.empty()) return PiecewiseConstant(b.breakpoints(), sign * b.values());
  const auto grid = merged_grid(a.breakpoints(), b.breakpoints());
  Eigen::VectorXd values(static_cast<Eigen::Index>(grid.size()) - 1);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double mid = 0.5 * (grid[k] + grid[k + 1]);
    values(static_cast<Eigen::Index>(k)) = a(mid) + sign * b(mid);
  }
  return PiecewiseConstant(to_vector(grid), std::move(values));
}

}  // namespace

PwlFunction::PwlFunction(Eigen::VectorXd breakpoints, Eigen::VectorXd values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2) throw DomainError("piecewise-linear function needs two breakpoints");
  if (values_.size() != breakpoints_.size())
    throw DimensionMismatch("breakpoint and value counts differ");
  if (breakpoints_(0) != 0.0 || breakpoints_(breakpoints_.size() - 1) != 1.0)
    throw DomainError("breakpoints must start at 0 and end at 1");
  check_grid(breakpoints_, "breakpoints");
  if (!values_.allFinite()) throw DomainError("non-finite function value");
}

PwlFunction PwlFunction::constant(double c) {
  return PwlFunction(Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(c, c));
}

PwlFunction PwlFunction::tent() {
  return PwlFunction(Eigen::Vector3d(0.0, 0.5, 1.0), Eigen::Vector3d(0.0, 1.0, 0.0));
}

double PwlFunction::operator()(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("evaluation point outside [0,1]");
  const double* first = breakpoints_.data();
  const double* last = first + breakpoints_.size();
  const double* it = std::upper_bound(first, last, s);
  const auto i = static_cast<Eigen::Index>(it - first) - 1;
  if (breakpoints_(i) == s) return values_(i);
  const double x0 = breakpoints_(i), x1 = breakpoints_(i + 1);
  const double v0 = values_(i), v1 = values_(i + 1);
  return v0 + (v1 - v0) * ((s - x0) / (x1 - x0));
}

PwlFunction PwlFunction::shifted(double c) const {
  return PwlFunction(breakpoints_, values_.array() + c);
}

PwlFunction PwlFunction::scaled(double a) const { return PwlFunction(breakpoints_, a * values_); }

PwlFunction operator+(const PwlFunction& a, const PwlFunction& b) {
  const auto grid = merged_grid(a.breakpoints_, b.breakpoints_);
  Eigen::VectorXd values(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    values(static_cast<Eigen::Index>(i)) = a(grid[i]) + b(grid[i]);
  return PwlFunction(to_vector(grid), std::move(values));
}

PwlFunction operator-(const PwlFunction& a, const PwlFunction& b) {
  return a + b.scaled(-1.0);
}

double sup_norm(const PwlFunction& f) { return f.values().cwiseAbs().maxCoeff(); }

bool MaximizingSet::contains(double s, double tol) const {
  for (double a : atoms)
    if (std::abs(a - s) <= tol) return true;
  for (const auto& iv : intervals)
    if (s >= iv.lo - tol && s <= iv.hi + tol) return true;
  return false;
}

bool MaximizingSet::contains(const Interval& seg, double tol) const {
  if (seg.hi - seg.lo <= tol) return contains(seg.lo, tol);
  for (const auto& iv : intervals)
    if (seg.lo >= iv.lo - tol && seg.hi <= iv.hi + tol) return true;
  return false;
}

std::vector<double> MaximizingSet::representatives() const {
  std::vector<double> out = atoms;
  for (const auto& iv : intervals) out.push_back(iv.lo);
  std::sort(out.begin(), out.end());
  return out;
}

bool same_set(const MaximizingSet& a, const MaximizingSet& b, double tol) {
  if (a.atoms.size() != b.atoms.size() || a.intervals.size() != b.intervals.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    if (std::abs(a.atoms[i] - b.atoms[i]) > tol) return false;
  for (std::size_t i = 0; i < a.intervals.size(); ++i)
    if (std::abs(a.intervals[i].lo - b.intervals[i].lo) > tol ||
        std::abs(a.intervals[i].hi - b.intervals[i].hi) > tol)
      return false;
  return true;
}

MaximizingSet maximizing_set(const PwlFunction& f) {
  const double n = sup_norm(f);
  if (n == 0.0) throw DomainError("maximizing set of the zero function");
  const auto& bp = f.breakpoints();
  const auto& v = f.values();
  const Eigen::Index count = bp.size();
  std::vector<int> sign(static_cast<std::size_t>(count), 0);
  for (Eigen::Index i = 0; i < count; ++i)
    if (std::abs(v(i)) >= n - kMaxTol) sign[static_cast<std::size_t>(i)] = v(i) > 0 ? 1 : -1;

  // |f| is convex on each segment, so the interior of a segment reaches ||f||
  // only when both ends sit at the same extreme value.
  MaximizingSet out;
  Eigen::Index i = 0;
  while (i < count) {
    const int s = sign[static_cast<std::size_t>(i)];
    if (s == 0) {
      ++i;
      continue;
    }
    Eigen::Index j = i;
    while (j + 1 < count && sign[static_cast<std::size_t>(j + 1)] == s) ++j;
    if (j > i)
      out.intervals.push_back({bp(i), bp(j)});
    else
      out.atoms.push_back(bp(i));
    i = j + 1;
  }
  return out;
}

PiecewiseConstant::PiecewiseConstant(Eigen::VectorXd breakpoints, Eigen::VectorXd values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() == 0 && values_.size() == 0) return;
  if (breakpoints_.size() < 2 || values_.size() != breakpoints_.size() - 1)
    throw DimensionMismatch("density needs one value per grid segment");
  check_grid(breakpoints_, "density breakpoints");
  if (!values_.allFinite()) throw DomainError("non-finite density value");
}

double PiecewiseConstant::operator()(double s) const {
  if (empty() || s < breakpoints_(0) || s >= breakpoints_(breakpoints_.size() - 1)) return 0.0;
  const double* first = breakpoints_.data();
  const double* it = std::upper_bound(first, first + breakpoints_.size(), s);
  return values_(static_cast<Eigen::Index>(it - first) - 1);
}

double PiecewiseConstant::integral() const {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < segments(); ++k)
    sum += values_(k) * (breakpoints_(k + 1) - breakpoints_(k));
  return sum;
}

double PiecewiseConstant::integral_abs() const {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < segments(); ++k)
    sum += std::abs(values_(k)) * (breakpoints_(k + 1) - breakpoints_(k));
  return sum;
}

RcaMeasure::RcaMeasure(std::vector<Atom> atoms, PiecewiseConstant density)
    : density_(std::move(density)) {
  for (const auto& a : atoms) {
    if (!(a.location >= 0.0 && a.location <= 1.0)) throw DomainError("atom outside [0,1]");
    if (!std::isfinite(a.weight)) throw DomainError("non-finite atom weight");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& x, const Atom& y) { return x.location < y.location; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().location == a.location)
      atoms_.back().weight += a.weight;
    else
      atoms_.push_back(a);
  }
}

double RcaMeasure::total_mass() const {
  double sum = density_.integral();
  for (const auto& a : atoms_) sum += a.weight;
  return sum;
}

RcaMeasure RcaMeasure::scaled(double a) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& x : atoms) x.weight *= a;
  PiecewiseConstant density =
      density_.empty() ? PiecewiseConstant{} : PiecewiseConstant(density_.breakpoints(), a * density_.values());
  return RcaMeasure(std::move(atoms), std::move(density));
}

RcaMeasure operator+(const RcaMeasure& a, const RcaMeasure& b) {
  std::vector<Atom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return RcaMeasure(std::move(atoms), combine(a.density_, b.density_, 1.0));
}

RcaMeasure operator-(const RcaMeasure& a, const RcaMeasure& b) {
  std::vector<Atom> atoms = a.atoms_;
  for (const auto& x : b.atoms_) atoms.push_back({x.location, -x.weight});
  return RcaMeasure(std::move(atoms), combine(a.density_, b.density_, -1.0));
}

double tv_norm(const RcaMeasure& mu) {
  double sum = mu.density().integral_abs();
  for (const auto& a : mu.atoms()) sum += std::abs(a.weight);
  return sum;
}

double pairing(const RcaMeasure& mu, const PwlFunction& f) {
  double sum = 0.0;
  for (const auto& a : mu.atoms()) sum += a.weight * f(a.location);
  const auto& d = mu.density();
  for (Eigen::Index k = 0; k < d.segments(); ++k) {
    if (d.values()(k) == 0.0) continue;
    sum += d.values()(k) * integrate(f, d.breakpoints()(k), d.breakpoints()(k + 1));
  }
  return sum;
}

RcaMeasure atomic_duality_measure(const PwlFunction& f, const std::vector<double>& points,
                                  const std::vector<double>& alphas) {
  const double n = sup_norm(f);
  if (n == 0.0) throw DomainError("duality measure of the zero function");
  if (points.empty() || points.size() != alphas.size())
    throw DimensionMismatch("need one positive alpha per point");
  double total = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0)) throw DomainError("alphas must be positive");
    total += a;
  }
  if (std::abs(total - 1.0) > kMaxTol) throw DomainError("alphas must sum to 1");
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double s = points[j];
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("point outside [0,1]");
    const double fs = f(s);
    if (std::abs(std::abs(fs) - n) > kMaxTol)
      throw DomainError("point " + std::to_string(s) + " is not in the maximizing set");
    for (std::size_t k = 0; k < j; ++k)
      if (points[k] == s) throw DomainError("repeated point in atomic measure");
    atoms.push_back({s, alphas[j] * fs});
  }
  return RcaMeasure::atomic(std::move(atoms));
}

RcaMeasure plateau_duality_measure(const PwlFunction& f, double a, double b) {
  if (!(a >= 0.0 && b <= 1.0 && a < b)) throw DomainError("plateau needs 0 <= a < b <= 1");
  const double n = sup_norm(f);
  if (n == 0.0) throw DomainError("duality measure of the zero function");
  auto at_max = [&](double s) { return std::abs(f(s) - n) <= kMaxTol; };
  bool flat = at_max(a) && at_max(b);
  for (Eigen::Index i = 0; flat && i < f.size(); ++i) {
    const double s = f.breakpoints()(i);
    if (s > a && s < b) flat = at_max(s);
  }
  if (!flat) throw DomainError("f is not constant at ||f|| on the given interval");
  return RcaMeasure::with_density(
      PiecewiseConstant(Eigen::Vector2d(a, b), Eigen::VectorXd::Constant(1, n / (b - a))));
}

RcaMeasure canonical_duality_measure(const PwlFunction& f) {
  if (sup_norm(f) == 0.0) return {};
  const auto points = maximizing_set(f).representatives();
  const std::vector<double> alphas(points.size(), 1.0 / static_cast<double>(points.size()));
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j < points.size(); ++j)
    atoms.push_back({points[j], alphas[j] * f(points[j])});
  return RcaMeasure::atomic(std::move(atoms));
}

MembershipReport is_duality_member(const RcaMeasure& mu, const PwlFunction& f, double tol) {
  const double n = sup_norm(f);
  const double v = tv_norm(mu);
  MembershipReport out;
  if (n == 0.0) {
    out.member = v <= tol;
    out.support_ok = true;
    return out;
  }
  out.member = std::abs(v - n) <= tol && std::abs(pairing(mu, f) - n * n) <= tol;
  const auto m = maximizing_set(f);
  out.support_ok = true;
  for (const auto& a : mu.atoms())
    if (a.weight != 0.0 && !m.contains(a.location)) out.support_ok = false;
  const auto& d = mu.density();
  for (Eigen::Index k = 0; k < d.segments(); ++k)
    if (d.values()(k) != 0.0 && !m.contains(Interval{d.breakpoints()(k), d.breakpoints()(k + 1)}))
      out.support_ok = false;
  return out;
}

EmbeddedSecondDual::EmbeddedSecondDual(PwlFunction f) : f_(std::move(f)) {
  if (!f_.is_nonnegative())
    throw DomainError("second-dual embedding needs a function in the positive cone");
}

}  // namespace dualmap::c01
