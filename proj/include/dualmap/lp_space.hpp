#ifndef DUALMAP_LP_SPACE_HPP
#define DUALMAP_LP_SPACE_HPP

// Normalized duality mapping on finitely supported sequences in l_p,
// 1 < p < inf. The dual space l_q is represented by the same vector type.

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "dualmap/errors.hpp"

namespace dualmap::lp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
void check_exponent(Scalar p) {
  if (!(p > Scalar(1)) || !std::isfinite(static_cast<double>(p)))
    throw DomainError("exponent must satisfy 1 < p < inf, got " +
                      std::to_string(static_cast<double>(p)));
}

template <typename Scalar>
Scalar conjugate_exponent(Scalar p) {
  check_exponent(p);
  return p / (p - Scalar(1));
}

template <typename Derived>
void check_finite(const Eigen::MatrixBase<Derived>& x) {
  if (!x.allFinite()) throw DomainError("vector has non-finite coordinates");
}

/// (sum |x_i|^p)^(1/p). Zero exactly when every coordinate is zero.
template <typename Derived>
typename Derived::Scalar norm(const Eigen::MatrixBase<Derived>& x,
                              typename Derived::Scalar p) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  check_exponent(p);
  check_finite(x);
  // Scale by the largest magnitude so the power sum cannot overflow.
  const Scalar peak = x.cwiseAbs().maxCoeff();
  if (peak == Scalar(0)) return Scalar(0);
  Scalar sum(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += pow(std::abs(x(i)) / peak, p);
  return peak * pow(sum, Scalar(1) / p);
}

namespace detail {

// |x_i|^(r-1) sign(x_i) / ||x||_r^(r-2); zero coordinates map to zero.
template <typename Derived>
Vector<typename Derived::Scalar> normalized_power(const Eigen::MatrixBase<Derived>& x,
                                                  typename Derived::Scalar r) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  const Scalar n = norm(x, r);
  Vector<Scalar> out = Vector<Scalar>::Zero(x.size());
  if (n == Scalar(0)) return out;
  const Scalar scale = pow(n, r - Scalar(2));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Scalar xi = x(i);
    if (xi == Scalar(0)) continue;
    const Scalar mag = pow(std::abs(xi), r - Scalar(1)) / scale;
    out(i) = xi > Scalar(0) ? mag : -mag;
  }
  return out;
}

}  // namespace detail

/// J : l_p -> l_q. J(theta) = theta.
template <typename Derived>
Vector<typename Derived::Scalar> duality_map(const Eigen::MatrixBase<Derived>& x,
                                             typename Derived::Scalar p) {
  return detail::normalized_power(x, p);
}

/// J* : l_q -> l_p, the inverse of duality_map when q is the conjugate of p.
template <typename Derived>
Vector<typename Derived::Scalar> dual_duality_map(const Eigen::MatrixBase<Derived>& u,
                                                  typename Derived::Scalar q) {
  return detail::normalized_power(u, q);
}

/// <u, x> between l_q and l_p.
template <typename DerivedU, typename DerivedX>
typename DerivedX::Scalar pairing(const Eigen::MatrixBase<DerivedU>& u,
                                  const Eigen::MatrixBase<DerivedX>& x) {
  if (u.size() != x.size())
    throw DimensionMismatch("pairing of vectors with dimensions " +
                            std::to_string(u.size()) + " and " + std::to_string(x.size()));
  return u.dot(x);
}

/// True when u is J(x) up to tol, measured relative to max(1, ||x||^2).
template <typename DerivedU, typename DerivedX>
bool is_duality_pair(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedX>& x,
                     typename DerivedX::Scalar p, typename DerivedX::Scalar tol) {
  using Scalar = typename DerivedX::Scalar;
  using std::abs;
  using std::max;
  const Scalar nx = norm(x, p);
  const Scalar nu = norm(u, conjugate_exponent(p));
  const Scalar sq = nx * nx;
  return abs(pairing(u, x) - sq) <= tol * max(Scalar(1), sq) &&
         abs(nu - nx) <= tol * max(Scalar(1), nx);
}

}  // namespace dualmap::lp

#endif  // DUALMAP_LP_SPACE_HPP
