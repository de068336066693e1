#ifndef DUALMAP_L1_SPACE_HPP
#define DUALMAP_L1_SPACE_HPP

// L_1(S) over a finite measure space whose points are atoms of positive
// weight, with dual L_inf(S). J is set-valued there: on the zero set of f a
// selection is free within [-||f||_1, ||f||_1].

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "dualmap/errors.hpp"

namespace dualmap::l1 {

class MeasureSpace {
 public:
  explicit MeasureSpace(Eigen::VectorXd weights);

  Eigen::Index size() const { return weights_.size(); }
  const Eigen::VectorXd& weights() const { return weights_; }
  double weight(Eigen::Index i) const { return weights_(i); }

  bool operator==(const MeasureSpace& other) const {
    return weights_.size() == other.weights_.size() && weights_ == other.weights_;
  }

 private:
  Eigen::VectorXd weights_;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

SpacePtr make_space(Eigen::VectorXd weights);
SpacePtr uniform_space(Eigen::Index n);

using SubsetMask = Eigen::Array<bool, Eigen::Dynamic, 1>;

SubsetMask mask_from_indices(Eigen::Index n, const std::vector<Eigen::Index>& indices);
std::vector<Eigen::Index> mask_indices(const SubsetMask& mask);
/// mu(A)
double measure(const MeasureSpace& space, const SubsetMask& mask);

struct PrimalTag {};
struct DualTag {};

// A value per point of a measure space. Primal elements live in L_1, dual
// elements (selections) in L_inf.
template <typename Tag>
struct Element {
  SpacePtr space;
  Eigen::VectorXd values;

  Element() = default;
  Element(SpacePtr s, Eigen::VectorXd v) : space(std::move(s)), values(std::move(v)) {
    if (!space) throw DomainError("element without a measure space");
    if (values.size() != space->size())
      throw DimensionMismatch("element has " + std::to_string(values.size()) +
                              " values for a space of " + std::to_string(space->size()) +
                              " points");
    if (!values.allFinite()) throw DomainError("element has non-finite values");
  }

  static Element zero(SpacePtr s) {
    const auto n = s->size();
    return Element(std::move(s), Eigen::VectorXd::Zero(n));
  }

  Eigen::Index size() const { return values.size(); }
};

using L1Function = Element<PrimalTag>;
using LinftySelection = Element<DualTag>;

bool same_space(const SpacePtr& a, const SpacePtr& b);

template <typename Tag>
Element<Tag> operator+(const Element<Tag>& a, const Element<Tag>& b) {
  if (!same_space(a.space, b.space)) throw DimensionMismatch("elements on different spaces");
  return Element<Tag>(a.space, a.values + b.values);
}

template <typename Tag>
Element<Tag> operator-(const Element<Tag>& a, const Element<Tag>& b) {
  if (!same_space(a.space, b.space)) throw DimensionMismatch("elements on different spaces");
  return Element<Tag>(a.space, a.values - b.values);
}

template <typename Tag>
Element<Tag> operator*(double alpha, const Element<Tag>& a) {
  return Element<Tag>(a.space, alpha * a.values);
}

/// Indicator function of a subset.
L1Function indicator(const SpacePtr& space, const SubsetMask& mask);

double l1_norm(const L1Function& f);
double linf_norm(const LinftySelection& g);
/// sum g_i f_i w_i
double pairing(const LinftySelection& g, const L1Function& f);

/// The selection of J(f) that takes +-||f||_1 on the sign sets of f and the
/// prescribed values `free_values` on its zero set, in point order.
LinftySelection duality_selection(const L1Function& f, const Eigen::VectorXd& free_values);
/// Same with zero on the zero set.
LinftySelection canonical_selection(const L1Function& f);

bool is_duality_member(const LinftySelection& g, const L1Function& f, double tol = 1e-10);

struct DualityClass {
  bool singleton = true;
  SubsetMask free_points;
};

/// Whether J(f) is a single selection, and which points are unconstrained.
/// J(theta) = {theta*} is reported as a singleton.
DualityClass duality_set_classify(const L1Function& f);

/// f in the positive cone acting on L_inf by integration against f.
class EmbeddedSecondDual {
 public:
  explicit EmbeddedSecondDual(L1Function f);

  double operator()(const LinftySelection& k) const { return pairing(k, f_); }
  const L1Function& function() const { return f_; }

 private:
  L1Function f_;
};

EmbeddedSecondDual embed_second_dual(const L1Function& f);

struct ConvexityCounterexample {
  L1Function f;
  L1Function g;
  double midpoint_norm;
};

/// f = chi_A / mu(A), g = chi_B / mu(B): two distinct unit vectors whose
/// midpoint is again a unit vector.
ConvexityCounterexample strict_convexity_counterexample(const SpacePtr& space,
                                                        const SubsetMask& a,
                                                        const SubsetMask& b);

}  // namespace dualmap::l1

#endif  // DUALMAP_L1_SPACE_HPP
