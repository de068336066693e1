#ifndef DUALMAP_C01_SPACE_HPP
#define DUALMAP_C01_SPACE_HPP

// C[0,1] modelled by piecewise-linear functions with the sup norm, and its
// dual rca[0,1] modelled by signed measures made of finitely many atoms plus
// a piecewise-constant density. Norms, pairings and maximizing sets are
// computed exactly on this class; no quadrature anywhere.

#include <vector>

#include <Eigen/Core>

#include "dualmap/errors.hpp"

namespace dualmap::c01 {

/// Absolute tolerance used to decide |f(s)| = ||f|| at breakpoints.
inline constexpr double kMaxTol = 1e-12;

class PwlFunction {
 public:
  /// The zero function.
  PwlFunction() : breakpoints_(Eigen::Vector2d(0, 1)), values_(Eigen::Vector2d::Zero()) {}
  /// Breakpoints must run strictly increasing from 0 to 1; one value each.
  PwlFunction(Eigen::VectorXd breakpoints, Eigen::VectorXd values);

  static PwlFunction constant(double c);
  /// 0 at both ends, 1 at 1/2.
  static PwlFunction tent();

  const Eigen::VectorXd& breakpoints() const { return breakpoints_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return breakpoints_.size(); }

  double operator()(double s) const;

  double max_value() const { return values_.maxCoeff(); }
  double min_value() const { return values_.minCoeff(); }
  bool is_nonnegative() const { return min_value() >= 0.0; }

  /// f + c
  PwlFunction shifted(double c) const;
  /// a f
  PwlFunction scaled(double a) const;

  friend PwlFunction operator+(const PwlFunction& a, const PwlFunction& b);
  friend PwlFunction operator-(const PwlFunction& a, const PwlFunction& b);

 private:
  Eigen::VectorXd breakpoints_;
  Eigen::VectorXd values_;
};

inline PwlFunction operator*(double a, const PwlFunction& f) { return f.scaled(a); }

double sup_norm(const PwlFunction& f);

struct Interval {
  double lo;
  double hi;
};

/// M(f) = {s : |f(s)| = ||f||}: isolated points plus closed plateaus.
struct MaximizingSet {
  std::vector<double> atoms;
  std::vector<Interval> intervals;

  bool contains(double s, double tol = kMaxTol) const;
  bool contains(const Interval& iv, double tol = kMaxTol) const;
  /// One point per component: every atom and the left end of every plateau.
  std::vector<double> representatives() const;
};

bool same_set(const MaximizingSet& a, const MaximizingSet& b, double tol = kMaxTol);

/// Rejects f = theta, where the maximizing set carries no information.
MaximizingSet maximizing_set(const PwlFunction& f);

/// Piecewise-constant function on a grid inside [0,1], zero off the grid.
class PiecewiseConstant {
 public:
  PiecewiseConstant() = default;
  /// values(k) holds on [breakpoints(k), breakpoints(k+1)).
  PiecewiseConstant(Eigen::VectorXd breakpoints, Eigen::VectorXd values);

  const Eigen::VectorXd& breakpoints() const { return breakpoints_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index segments() const { return values_.size(); }
  bool empty() const { return values_.size() == 0; }

  double operator()(double s) const;
  double integral() const;
  double integral_abs() const;

 private:
  Eigen::VectorXd breakpoints_;
  Eigen::VectorXd values_;
};

struct Atom {
  double location;
  double weight;
};

class RcaMeasure {
 public:
  RcaMeasure() = default;
  /// Atoms are sorted by location; repeated locations are merged.
  RcaMeasure(std::vector<Atom> atoms, PiecewiseConstant density);

  static RcaMeasure atomic(std::vector<Atom> atoms) { return {std::move(atoms), {}}; }
  static RcaMeasure with_density(PiecewiseConstant density) { return {{}, std::move(density)}; }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const PiecewiseConstant& density() const { return density_; }

  /// mu([0,1])
  double total_mass() const;
  RcaMeasure scaled(double a) const;

  friend RcaMeasure operator+(const RcaMeasure& a, const RcaMeasure& b);
  friend RcaMeasure operator-(const RcaMeasure& a, const RcaMeasure& b);

 private:
  std::vector<Atom> atoms_;
  PiecewiseConstant density_;
};

inline RcaMeasure operator*(double a, const RcaMeasure& mu) { return mu.scaled(a); }

/// Standard total variation |mu|([0,1]).
double tv_norm(const RcaMeasure& mu);

/// integral of f against mu.
double pairing(const RcaMeasure& mu, const PwlFunction& f);

/// Atoms alpha_j f(s_j) at points s_j of M(f); alphas positive, summing to 1.
RcaMeasure atomic_duality_measure(const PwlFunction& f, const std::vector<double>& points,
                                  const std::vector<double>& alphas);

/// Density ||f||/(b-a) on a plateau [a,b] where f = ||f||.
RcaMeasure plateau_duality_measure(const PwlFunction& f, double a, double b);

/// Uniform atomic measure on M(f).representatives(); theta* for f = theta.
RcaMeasure canonical_duality_measure(const PwlFunction& f);

struct MembershipReport {
  bool member = false;
  bool support_ok = false;
};

/// `member` is the defining test (||mu|| = ||f||, <mu,f> = ||f||^2);
/// `support_ok` reports whether mu lives on M(f). For f = theta the only
/// member is theta*, and every support is accepted.
MembershipReport is_duality_member(const RcaMeasure& mu, const PwlFunction& f,
                                   double tol = 1e-10);

/// f in the positive cone acting on rca[0,1] by integration.
class EmbeddedSecondDual {
 public:
  explicit EmbeddedSecondDual(PwlFunction f);

  double operator()(const RcaMeasure& mu) const { return pairing(mu, f_); }
  const PwlFunction& function() const { return f_; }

 private:
  PwlFunction f_;
};

}  // namespace dualmap::c01

#endif  // DUALMAP_C01_SPACE_HPP
