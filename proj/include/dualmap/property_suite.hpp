#ifndef DUALMAP_PROPERTY_SUITE_HPP
#define DUALMAP_PROPERTY_SUITE_HPP

// Oracles that do not share code paths with the backends they check, and a
// seeded battery of the elementary properties of J:
//
//   J1  J(x) is nonempty and convex      (canonical element is a member; the
//                                         midpoint of two members is one)
//   J2  J = I on a Hilbert space         (lp with p = 2 only)
//   J3  J(0) = 0*
//   J4  J(a x) = a J(x)
//   J5  <j(x) - j(y), x - y> >= 0
//   J6  2<j(y), x - y> <= ||x||^2 - ||y||^2 <= 2<j(x), x - y>
//
// plus per-backend invariants. Set-valued backends use canonical selections.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dualmap/l1_space.hpp"

namespace dualmap {

struct GradientOracleResult {
  Eigen::VectorXd gradient;
  /// Coordinates skipped because |x_i| <= 10 step with p < 2; set to NaN.
  std::vector<Eigen::Index> flagged;
};

/// Central differences of x -> ||x||_p^2 / 2.
GradientOracleResult gradient_oracle_lp(const Eigen::VectorXd& x, double p, double step = 1e-5);

inline constexpr int kBruteForceMaxPoints = 4;
inline constexpr int kBruteForceMaxSteps = 41;

/// Every selection on the grid -n + 2n k/(steps-1), n = ||f||_1, that passes
/// the membership test. The test tolerance is half the smallest change in
/// <g, f> a single grid move can cause, so it separates grid neighbours.
std::vector<l1::LinftySelection> brute_force_duality_l1(const l1::L1Function& f, int grid_steps);

/// Whether g has +-||f||_1 on the sign sets of f and |g| <= ||f||_1 on its
/// zero set, within tol.
bool matches_selection_template(const l1::LinftySelection& g, const l1::L1Function& f,
                                double tol);

struct SpaceDescriptor {
  std::string kind = "lp";  // "lp", "l1" or "c01"
  double p = 2.0;
  Eigen::VectorXd weights;

  std::string label() const;
};

struct PropertyRecord {
  std::string id;
  std::string description;
  int samples = 0;
  double max_violation = 0.0;
  double tolerance = 1e-9;
  bool applicable = true;
  bool pass = true;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::string space;
  std::vector<PropertyRecord> properties;

  bool all_pass() const;
  const PropertyRecord* find(const std::string& id) const;
};

/// Violations are normalized by max(1, natural scale of the instance).
SuiteReport run_appendix_battery(const SpaceDescriptor& space, int samples, std::uint64_t seed);

}  // namespace dualmap

#endif  // DUALMAP_PROPERTY_SUITE_HPP
