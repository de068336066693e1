#include "doctest.h"
#include "dualmap/c01_space.hpp"
#include "support/draws.hpp"

using namespace dualmap;
using namespace dualmap::c01;
using Eigen::VectorXd;

namespace {

PwlFunction two_point(double a, double b) { return PwlFunction(VectorXd{{0.0, 1.0}}, VectorXd{{a, b}}); }

// 0 on [0,0.25], 2 on [0.25,0.75], 0 at 1; steep sides keep it continuous.
PwlFunction mesa() {
  return PwlFunction(VectorXd{{0.0, 0.2, 0.25, 0.75, 0.8, 1.0}},
                     VectorXd{{0.0, 0.0, 2.0, 2.0, 0.0, 0.0}});
}

}  // namespace

TEST_CASE("construction and evaluation") {
  CHECK_THROWS_AS(PwlFunction(VectorXd{{0.0, 0.5}}, VectorXd{{1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(PwlFunction(VectorXd{{0.0, 0.6, 0.5, 1.0}}, VectorXd::Zero(4)), DomainError);
  CHECK_THROWS_AS(PwlFunction(VectorXd{{0.0, 1.0}}, VectorXd::Zero(3)), DimensionMismatch);
  const auto t = PwlFunction::tent();
  CHECK(t(0.25) == 0.5);
  CHECK(t(0.5) == 1.0);
  CHECK(t(1.0) == 0.0);
  CHECK_THROWS_AS(t(1.5), DomainError);
  const auto sum = t + two_point(0.0, 1.0);
  CHECK(sum(0.5) == 1.5);
  CHECK(sum(0.75) == doctest::Approx(1.25));
  CHECK((2.0 * t)(0.5) == 2.0);
}

TEST_CASE("sup norm") {
  CHECK(sup_norm(PwlFunction::constant(1.0)) == 1.0);
  CHECK(sup_norm(PwlFunction::tent()) == 1.0);
  CHECK(sup_norm(two_point(-3.0, 2.0)) == 3.0);
}

TEST_CASE("maximizing set") {
  const auto tent = maximizing_set(PwlFunction::tent());
  CHECK(tent.atoms == std::vector<double>{0.5});
  CHECK(tent.intervals.empty());

  const auto one = maximizing_set(PwlFunction::constant(1.0));
  CHECK(one.atoms.empty());
  REQUIRE(one.intervals.size() == 1);
  CHECK(one.intervals[0].lo == 0.0);
  CHECK(one.intervals[0].hi == 1.0);

  const auto ends = maximizing_set(two_point(1.0, -1.0));
  CHECK(ends.atoms == std::vector<double>{0.0, 1.0});

  CHECK_THROWS_AS(maximizing_set(PwlFunction::constant(0.0)), DomainError);
}

TEST_CASE("maximizing set is invariant under nonzero scaling") {
  draws::Rng rng(31);
  for (int s = 0; s < 200; ++s) {
    const auto f = draws::pwl(rng).fn();
    if (sup_norm(f) == 0.0) continue;
    double t = 0;
    while (std::abs(t) < 0.1) t = draws::uni(rng, -3, 3);
    CHECK(same_set(maximizing_set(f), maximizing_set(t * f)));
  }
}

TEST_CASE("atomic duality measures") {
  const auto tent = PwlFunction::tent();
  const auto mu = atomic_duality_measure(tent, {0.5}, {1.0});
  REQUIRE(mu.atoms().size() == 1);
  CHECK(mu.atoms()[0].location == 0.5);
  CHECK(mu.atoms()[0].weight == 1.0);

  const auto f = two_point(1.0, -1.0);
  const auto nu = atomic_duality_measure(f, {0.0, 1.0}, {0.5, 0.5});
  REQUIRE(nu.atoms().size() == 2);
  CHECK(nu.atoms()[0].weight == 0.5);
  CHECK(nu.atoms()[1].weight == -0.5);
  CHECK(pairing(nu, f) == 1.0);

  CHECK_THROWS_AS(atomic_duality_measure(tent, {0.25}, {1.0}), DomainError);
  CHECK_THROWS_AS(atomic_duality_measure(f, {0.0, 1.0}, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(atomic_duality_measure(f, {0.0, 1.0}, {1.0}), DimensionMismatch);
}

TEST_CASE("plateau duality measures") {
  const auto one = plateau_duality_measure(PwlFunction::constant(1.0), 0.0, 1.0);
  CHECK(one.density()(0.3) == 1.0);
  CHECK(one.atoms().empty());

  const auto m = mesa();
  const auto mu = plateau_duality_measure(m, 0.25, 0.75);
  CHECK(mu.density()(0.5) == 4.0);
  CHECK(mu.density()(0.1) == 0.0);
  CHECK(pairing(mu, m) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(tv_norm(mu) == 2.0);

  CHECK_THROWS_AS(plateau_duality_measure(PwlFunction::tent(), 0.4, 0.6), DomainError);
}

TEST_CASE("total variation and pairing") {
  CHECK(tv_norm(RcaMeasure::atomic({{0.5, 1.0}})) == 1.0);
  CHECK(tv_norm(RcaMeasure::atomic({{0.0, 0.5}, {1.0, -0.5}})) == 1.0);
  CHECK(tv_norm(RcaMeasure()) == 0.0);

  CHECK(pairing(RcaMeasure::atomic({{0.5, 1.0}}), PwlFunction::tent()) == 1.0);
  const auto lebesgue = RcaMeasure::with_density(PiecewiseConstant(VectorXd{{0.0, 1.0}}, VectorXd{{1.0}}));
  CHECK(pairing(lebesgue, PwlFunction::constant(1.0)) == 1.0);
  CHECK(pairing(lebesgue, two_point(0.0, 1.0)) == 0.5);
  CHECK(pairing(lebesgue, PwlFunction::tent()) == doctest::Approx(0.5).epsilon(1e-15));

  const auto mixed = RcaMeasure::atomic({{0.5, 1.0}}) + lebesgue;
  CHECK(tv_norm(mixed) == 2.0);
  CHECK(tv_norm(mixed - mixed) == 0.0);
  CHECK(mixed.total_mass() == 2.0);
}

TEST_CASE("membership reports") {
  const auto tent = PwlFunction::tent();
  const auto a = is_duality_member(atomic_duality_measure(tent, {0.5}, {1.0}), tent);
  CHECK(a.member);
  CHECK(a.support_ok);

  const auto b = is_duality_member(RcaMeasure::atomic({{0.25, 1.0}}), tent);
  CHECK_FALSE(b.member);
  CHECK_FALSE(b.support_ok);

  const auto one = PwlFunction::constant(1.0);
  const auto c = is_duality_member(plateau_duality_measure(one, 0.0, 1.0), one);
  CHECK(c.member);
  CHECK(c.support_ok);

  const auto z = is_duality_member(RcaMeasure(), PwlFunction());
  CHECK(z.member);
}

TEST_CASE("second-dual embedding") {
  const auto phi = EmbeddedSecondDual(PwlFunction::tent());
  CHECK(phi(RcaMeasure::atomic({{0.5, 2.0}})) == 2.0);
  CHECK_THROWS_AS(EmbeddedSecondDual(two_point(1.0, -1.0)), DomainError);
}

TEST_CASE("canonical measures on random functions against the oracle") {
  draws::Rng rng(32);
  for (int s = 0; s < 300; ++s) {
    const auto d = draws::pwl(rng);
    const auto f = d.fn();
    const double n = d.norm();
    const auto mu = canonical_duality_measure(f);
    if (n == 0.0) {
      CHECK(tv_norm(mu) == 0.0);
      continue;
    }
    long double paired = 0, tv = 0;
    for (const auto& a : mu.atoms()) {
      paired += (long double)a.weight * draws::pwl_eval(d.bp, d.v, a.location);
      tv += std::fabs((long double)a.weight);
      CHECK(std::abs(std::abs(draws::pwl_eval(d.bp, d.v, a.location)) - n) <= 1e-12);
    }
    CHECK(static_cast<double>(tv) == doctest::Approx(n).epsilon(1e-12));
    CHECK(static_cast<double>(paired) == doctest::Approx(n * n).epsilon(1e-12));
    const auto rep = is_duality_member(mu, f);
    CHECK(rep.member);
    CHECK(rep.support_ok);
  }
}
