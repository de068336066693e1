#include <cmath>
#include <random>

#include "doctest.h"
#include "dualmap/lp_space.hpp"
#include "support/draws.hpp"

using namespace dualmap;
using Eigen::VectorXd;

namespace {

bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= std::max(1e-12, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_CASE("lp norm") {
  CHECK(lp::norm(VectorXd{{3.0, 4.0}}, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(lp::norm(VectorXd::Zero(3), 3.0) == 0.0);
  const double oracle = static_cast<double>(draws::oracle_lp_norm(VectorXd{{1.0, 1.0}}, 3.0));
  CHECK(close(lp::norm(VectorXd{{1.0, 1.0}}, 3.0), oracle));
  CHECK(close(oracle, std::cbrt(2.0)));
}

TEST_CASE("lp norm rejects exponents outside (1, inf)") {
  CHECK_THROWS_AS(lp::norm(VectorXd{{1.0}}, 1.0), DomainError);
  CHECK_THROWS_AS(lp::norm(VectorXd{{1.0}}, 0.5), DomainError);
  CHECK_THROWS_AS(lp::duality_map(VectorXd{{1.0}}, INFINITY), DomainError);
  CHECK_THROWS_AS(lp::duality_map(VectorXd{{1.0}}, NAN), DomainError);
}

TEST_CASE("lp norm does not overflow for huge coordinates") {
  CHECK(close(lp::norm(VectorXd{{3e200, 4e200}}, 2.0), 5e200));
}

TEST_CASE("duality map examples") {
  SUBCASE("Hilbert identity emerges from the formula at p = 2") {
    const VectorXd j = lp::duality_map(VectorXd{{3.0, 4.0}}, 2.0);
    CHECK(j(0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(j(1) == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("origin maps to origin for every p") {
    for (double p : draws::kExponents) CHECK(lp::duality_map(VectorXd::Zero(4), p).isZero(0.0));
  }
  SUBCASE("(1,1) at p = 3") {
    const VectorXd j = lp::duality_map(VectorXd{{1.0, 1.0}}, 3.0);
    const double expected = std::pow(2.0, -1.0 / 3.0);
    CHECK(close(j(0), expected));
    CHECK(close(j(1), expected));
    CHECK(close(lp::pairing(j, VectorXd{{1.0, 1.0}}), std::pow(2.0, 2.0 / 3.0)));
  }
  SUBCASE("zero coordinates stay zero when p < 2") {
    const VectorXd j = lp::duality_map(VectorXd{{0.0, 2.0, -1.0}}, 1.2);
    CHECK(j(0) == 0.0);
    CHECK(j.allFinite());
  }
}

TEST_CASE("dual duality map") {
  const VectorXd j = lp::dual_duality_map(VectorXd{{3.0, 4.0}}, 2.0);
  CHECK(close(j(0), 3.0));
  CHECK(close(j(1), 4.0));
  CHECK(lp::dual_duality_map(VectorXd::Zero(2), 1.5).isZero(0.0));
  const VectorXd x{{2.0, -1.0, 0.5}};
  const VectorXd back = lp::dual_duality_map(lp::duality_map(x, 2.5), 5.0 / 3.0);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(back(i) - x(i)) <= 1e-9 * std::abs(x(i)));
}

TEST_CASE("conjugate exponent") {
  CHECK(lp::conjugate_exponent(2.0) == 2.0);
  CHECK(lp::conjugate_exponent(3.0) == 1.5);
  CHECK(close(1 / 2.5 + 1 / lp::conjugate_exponent(2.5), 1.0, 1e-15));
}

TEST_CASE("pairing") {
  CHECK(lp::pairing(VectorXd{{1.0, 0.0}}, VectorXd{{0.0, 1.0}}) == 0.0);
  CHECK(lp::pairing(VectorXd{{3.0, 4.0}}, VectorXd{{3.0, 4.0}}) == 25.0);
  CHECK(lp::pairing(VectorXd{{2.0, -1.0}}, VectorXd{{1.0, 1.0}}) == 1.0);
  CHECK_THROWS_AS(lp::pairing(VectorXd{{1.0}}, VectorXd{{1.0, 2.0}}), DimensionMismatch);
}

TEST_CASE("scalar type is a template parameter") {
  using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const VectorL x{{1.0L, 1.0L}};
  const VectorL j = lp::duality_map(x, 3.0L);
  CHECK(std::abs(j(0) - std::pow(2.0L, -1.0L / 3.0L)) < 1e-17L);
  const Eigen::VectorXf xf{{3.0f, 4.0f}};
  CHECK(lp::norm(xf, 2.0f) == doctest::Approx(5.0f));
}

TEST_CASE("duality identities on random vectors against the oracle") {
  draws::Rng rng(11);
  for (int s = 0; s < 300; ++s) {
    const double p = draws::kExponents[draws::uni_int(rng, 0, 4)];
    const double q = lp::conjugate_exponent(p);
    const VectorXd x = draws::vec(rng, draws::uni_int(rng, 1, 32), 10.0);
    const VectorXd j = lp::duality_map(x, p);
    const double nx = static_cast<double>(draws::oracle_lp_norm(x, p));
    CHECK(close(static_cast<double>(draws::dot(j, x)), nx * nx));
    CHECK(close(static_cast<double>(draws::oracle_lp_norm(j, q)), nx));
    const VectorXd oracle = draws::oracle_duality(x, p);
    CHECK((j - oracle).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, oracle.cwiseAbs().maxCoeff()));
    CHECK(lp::is_duality_pair(j, x, p, 1e-9));
  }
}

TEST_CASE("homogeneity, monotonicity and the two-sided bound") {
  draws::Rng rng(12);
  for (int s = 0; s < 300; ++s) {
    const double p = draws::kExponents[draws::uni_int(rng, 0, 4)];
    const auto n = draws::uni_int(rng, 1, 16);
    const VectorXd x = draws::vec(rng, n, 10.0), y = draws::vec(rng, n, 10.0);
    const double a = draws::uni(rng, -4, 4);
    const VectorXd lhs = lp::duality_map((a * x).eval(), p);
    const VectorXd rhs = a * lp::duality_map(x, p);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));

    const VectorXd jx = lp::duality_map(x, p), jy = lp::duality_map(y, p);
    const double nx = lp::norm(x, p), ny = lp::norm(y, p);
    const double scale = std::max(1.0, (nx + ny) * (nx + ny));
    CHECK(lp::pairing((jx - jy).eval(), (x - y).eval()) >= -1e-12 * scale);
    const double mid = nx * nx - ny * ny;
    CHECK(2 * lp::pairing(jy, (x - y).eval()) <= mid + 1e-9 * scale);
    CHECK(mid <= 2 * lp::pairing(jx, (x - y).eval()) + 1e-9 * scale);
  }
}
