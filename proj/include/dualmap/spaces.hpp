#ifndef DUALMAP_SPACES_HPP
#define DUALMAP_SPACES_HPP

// Uniform adapters over the three backends. The coderivative engine is
// written against this interface:
//
//   Primal, Dual                       element types of X and X*
//   primal_norm, dual_norm             ||.|| and ||.||_*
//   pairing(Dual, Primal)              <x*, x>
//   is_member(Dual, Primal, tol)       x* in J(x), tol relative to max(1, ||x||^2)
//   admits_second_dual(Primal)         whether x can act as y** on X*: any x in a
//                                      reflexive space, the positive cone otherwise

#include <algorithm>
#include <string>

#include <Eigen/Core>

#include "dualmap/c01_space.hpp"
#include "dualmap/l1_space.hpp"
#include "dualmap/lp_space.hpp"

namespace dualmap {

struct LpSpace {
  using Primal = Eigen::VectorXd;
  using Dual = Eigen::VectorXd;

  double p = 2.0;

  explicit LpSpace(double exponent) : p(exponent) { lp::check_exponent(p); }

  static constexpr const char* name() { return "lp"; }
  double q() const { return lp::conjugate_exponent(p); }

  double primal_norm(const Primal& x) const { return lp::norm(x, p); }
  double dual_norm(const Dual& u) const { return lp::norm(u, q()); }
  double pairing(const Dual& u, const Primal& x) const { return lp::pairing(u, x); }
  Dual duality(const Primal& x) const { return lp::duality_map(x, p); }
  bool is_member(const Dual& u, const Primal& x, double tol) const {
    return lp::is_duality_pair(u, x, p, tol);
  }
  bool admits_second_dual(const Primal&) const { return true; }
};

struct L1Space {
  using Primal = l1::L1Function;
  using Dual = l1::LinftySelection;

  l1::SpacePtr measure;

  explicit L1Space(l1::SpacePtr m) : measure(std::move(m)) {
    if (!measure) throw DomainError("L1 backend without a measure space");
  }

  static constexpr const char* name() { return "l1"; }

  Primal primal(Eigen::VectorXd values) const { return Primal(measure, std::move(values)); }
  Dual dual(Eigen::VectorXd values) const { return Dual(measure, std::move(values)); }

  double primal_norm(const Primal& f) const { return l1::l1_norm(f); }
  double dual_norm(const Dual& g) const { return l1::linf_norm(g); }
  double pairing(const Dual& g, const Primal& f) const { return l1::pairing(g, f); }
  bool is_member(const Dual& g, const Primal& f, double tol) const {
    const double n = l1::l1_norm(f);
    return l1::is_duality_member(g, f, tol * std::max(1.0, n * n));
  }
  bool admits_second_dual(const Primal& f) const { return (f.values.array() >= 0.0).all(); }
};

struct C01Space {
  using Primal = c01::PwlFunction;
  using Dual = c01::RcaMeasure;

  static constexpr const char* name() { return "c01"; }

  double primal_norm(const Primal& f) const { return c01::sup_norm(f); }
  double dual_norm(const Dual& mu) const { return c01::tv_norm(mu); }
  double pairing(const Dual& mu, const Primal& f) const { return c01::pairing(mu, f); }
  bool is_member(const Dual& mu, const Primal& f, double tol) const {
    const double n = c01::sup_norm(f);
    return c01::is_duality_member(mu, f, tol * std::max(1.0, n * n)).member;
  }
  bool admits_second_dual(const Primal& f) const { return f.is_nonnegative(); }
};

}  // namespace dualmap

#endif  // DUALMAP_SPACES_HPP
