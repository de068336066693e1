#include "dualmap/l1_space.hpp"

#include <cmath>
#include <string>

namespace dualmap::l1 {

MeasureSpace::MeasureSpace(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() < 1) throw DomainError("measure space needs at least one point");
  for (Eigen::Index i = 0; i < weights_.size(); ++i)
    if (!(weights_(i) > 0.0) || !std::isfinite(weights_(i)))
      throw DomainError("point weights must be positive and finite (point " +
                        std::to_string(i) + ")");
}

SpacePtr make_space(Eigen::VectorXd weights) {
  return std::make_shared<const MeasureSpace>(std::move(weights));
}

SpacePtr uniform_space(Eigen::Index n) { return make_space(Eigen::VectorXd::Ones(n)); }

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

SubsetMask mask_from_indices(Eigen::Index n, const std::vector<Eigen::Index>& indices) {
  SubsetMask mask = SubsetMask::Constant(n, false);
  for (auto i : indices) {
    if (i < 0 || i >= n)
      throw DomainError("mask index " + std::to_string(i) + " outside a space of " +
                        std::to_string(n) + " points");
    mask(i) = true;
  }
  return mask;
}

std::vector<Eigen::Index> mask_indices(const SubsetMask& mask) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < mask.size(); ++i)
    if (mask(i)) out.push_back(i);
  return out;
}

double measure(const MeasureSpace& space, const SubsetMask& mask) {
  if (mask.size() != space.size()) throw DimensionMismatch("mask length differs from space");
  long double sum = 0;
  for (Eigen::Index i = 0; i < mask.size(); ++i)
    if (mask(i)) sum += space.weight(i);
  return static_cast<double>(sum);
}

L1Function indicator(const SpacePtr& space, const SubsetMask& mask) {
  if (mask.size() != space->size()) throw DimensionMismatch("mask length differs from space");
  return L1Function(space, mask.cast<double>().matrix());
}

double l1_norm(const L1Function& f) {
  long double sum = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i)
    sum += static_cast<long double>(std::abs(f.values(i))) * f.space->weight(i);
  return static_cast<double>(sum);
}

double linf_norm(const LinftySelection& g) {
  return g.size() == 0 ? 0.0 : g.values.cwiseAbs().maxCoeff();
}

double pairing(const LinftySelection& g, const L1Function& f) {
  if (!same_space(g.space, f.space)) throw DimensionMismatch("pairing across different spaces");
  long double sum = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i)
    sum += static_cast<long double>(g.values(i)) * f.values(i) * f.space->weight(i);
  return static_cast<double>(sum);
}

LinftySelection duality_selection(const L1Function& f, const Eigen::VectorXd& free_values) {
  const double n = l1_norm(f);
  if (n == 0.0)
    throw DomainError("duality_selection of the origin; J(theta) = {theta*}");
  Eigen::VectorXd out(f.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = f.values(i);
    if (v > 0.0) {
      out(i) = n;
    } else if (v < 0.0) {
      out(i) = -n;
    } else {
      if (k >= free_values.size())
        throw DimensionMismatch("too few free values for the zero set of f");
      const double a = free_values(k++);
      if (!(std::abs(a) <= n))
        throw DomainError("free value " + std::to_string(a) + " exceeds ||f||_1 = " +
                          std::to_string(n));
      out(i) = a;
    }
  }
  if (k != free_values.size())
    throw DimensionMismatch("free values given for " + std::to_string(free_values.size()) +
                            " points, zero set has " + std::to_string(k));
  return LinftySelection(f.space, std::move(out));
}

LinftySelection canonical_selection(const L1Function& f) {
  if (l1_norm(f) == 0.0) return LinftySelection::zero(f.space);
  const auto zeros = (f.values.array() == 0.0).count();
  return duality_selection(f, Eigen::VectorXd::Zero(zeros));
}

bool is_duality_member(const LinftySelection& g, const L1Function& f, double tol) {
  const double n = l1_norm(f);
  return std::abs(linf_norm(g) - n) <= tol && std::abs(pairing(g, f) - n * n) <= tol;
}

DualityClass duality_set_classify(const L1Function& f) {
  DualityClass out;
  if (l1_norm(f) == 0.0) {
    out.singleton = true;
    out.free_points = SubsetMask::Constant(f.size(), false);
    return out;
  }
  out.free_points = f.values.array() == 0.0;
  out.singleton = !out.free_points.any();
  return out;
}

EmbeddedSecondDual::EmbeddedSecondDual(L1Function f) : f_(std::move(f)) {
  if ((f_.values.array() < 0.0).any())
    throw DomainError("second-dual embedding needs a function in the positive cone");
}

EmbeddedSecondDual embed_second_dual(const L1Function& f) { return EmbeddedSecondDual(f); }

ConvexityCounterexample strict_convexity_counterexample(const SpacePtr& space,
                                                        const SubsetMask& a,
                                                        const SubsetMask& b) {
  if (a.size() != space->size() || b.size() != space->size())
    throw DimensionMismatch("mask length differs from space");
  if (!a.any() || !b.any()) throw DomainError("both sets need positive measure");
  if ((a && b).any()) throw DomainError("sets must be disjoint");
  const double ma = measure(*space, a);
  const double mb = measure(*space, b);
  L1Function f(space, a.cast<double>().matrix() / ma);
  L1Function g(space, b.cast<double>().matrix() / mb);
  // ||(f+g)/2||_1 = (mu(A)/mu(A) + mu(B)/mu(B)) / 2, accumulated per set.
  long double wa = 0, wb = 0;
  for (Eigen::Index i = 0; i < space->size(); ++i) {
    if (a(i)) wa += space->weight(i);
    if (b(i)) wb += space->weight(i);
  }
  long double sa = 0, sb = 0;
  for (Eigen::Index i = 0; i < space->size(); ++i) {
    if (a(i)) sa += space->weight(i) / wa;
    if (b(i)) sb += space->weight(i) / wb;
  }
  return {std::move(f), std::move(g), static_cast<double>((sa + sb) / 2)};
}

}  // namespace dualmap::l1
