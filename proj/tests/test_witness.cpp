#include "doctest.h"
#include "dualmap/witness.hpp"
#include "support/draws.hpp"

using namespace dualmap;
using Eigen::VectorXd;

namespace {

template <class F>
std::string hypothesis_message(F&& build) {
  try {
    build();
  } catch (const HypothesisError& e) {
    return e.what();
  }
  return "";
}

double bound_of(const AnyWitness& w) {
  return std::visit([](const auto& v) { return v.bound; }, w);
}

}  // namespace

TEST_CASE("catalog ids") {
  const auto& ids = theorem_ids();
  CHECK(ids.size() == 14);
  CHECK(theorem_space("thm31") == "lp");
  CHECK(theorem_space("cor48") == "l1");
  CHECK(theorem_space("thm45_case2") == "l1");
  CHECK(theorem_space("thm58") == "c01");
  CHECK_THROWS_AS(theorem_space("thm99"), DomainError);
  CHECK_THROWS_AS(theorem_space("thm3"), DomainError);
}

TEST_CASE("closed-form bounds") {
  SUBCASE("thm33 in l2") {
    CHECK(witness_thm33(LpSpace(2.0), VectorXd{{1.0, 0.0}}, 3.0).bound == 1.0);
  }
  SUBCASE("thm46") {
    const L1Space sp(l1::uniform_space(2));
    const auto w = witness_thm46(sp, sp.dual(VectorXd{{1.0, 0.0}}), l1::mask_from_indices(2, {0}));
    CHECK(w.bound == 0.5);
    CHECK(certify(w).verdict == Verdict::certified);
  }
  SUBCASE("thm53 with the plateau measure") {
    const auto one = c01::PwlFunction::constant(1.0);
    const auto w = witness_thm53(one, c01::plateau_duality_measure(one, 0.0, 1.0));
    CHECK(w.bound == 0.5);
    CHECK(certify(w).verdict == Verdict::certified);
  }
  SUBCASE("thm47") {
    const L1Space sp(l1::uniform_space(2));
    const auto w = witness_thm47(sp, sp.primal(VectorXd{{2.0, 1.0}}), l1::mask_from_indices(2, {0}), 1.5);
    CHECK(w.bound == 3.0);
    CHECK(w.query.candidate.values == VectorXd{{-3.0, -3.0}});
    const auto c = certify(w);
    CHECK(c.verdict == Verdict::certified);
    CHECK(c.estimate.limit == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("thm31 at the origin") {
    const auto w = witness_thm31(LpSpace(3.0), VectorXd::Zero(2), VectorXd{{0.0, 1.0}});
    CHECK(w.bound == 0.5);
    CHECK(w.kind == BoundKind::exact);
  }
  SUBCASE("cor57 uses the right endpoint") {
    const c01::PwlFunction f(VectorXd{{0.0, 1.0}}, VectorXd{{0.0, 1.0}});
    const c01::PwlFunction u(VectorXd{{0.0, 0.5, 1.0}}, VectorXd{{0.5, 0.5, 3.0}});
    const auto w = witness_cor57(f, u);
    CHECK(w.bound == 1.0);
    CHECK(certify(w).verdict == Verdict::certified);
  }
}

TEST_CASE("hypothesis violations name the condition") {
  const LpSpace l2(2.0);
  CHECK(hypothesis_message([&] { witness_thm32(l2, VectorXd{{1.0, 0.0}}, VectorXd{{0.0, 1.0}}); }) ==
        "hypothesis violated: <J(x), y> != 0");
  CHECK(hypothesis_message([&] { witness_thm33(l2, VectorXd{{1.0, 0.0}}, 1.0); }) ==
        "hypothesis violated: a != 1");
  CHECK(hypothesis_message([&] { witness_thm33(l2, VectorXd::Zero(2), 2.0); }) ==
        "hypothesis violated: x != theta");
  CHECK(hypothesis_message([&] { witness_thm31(l2, VectorXd::Zero(2), VectorXd::Zero(2)); }) ==
        "hypothesis violated: w_m != 0");
  CHECK(hypothesis_message([] { witness_thm58(c01::PwlFunction::constant(1.0), 1.0); }) ==
        "hypothesis violated: c ≠ 1");
  CHECK(hypothesis_message([] { witness_thm53(c01::PwlFunction::constant(-1.0)); }) ==
        "hypothesis violated: f in the positive cone");
  CHECK(hypothesis_message([] {
          witness_thm55(c01::PwlFunction::tent(), c01::RcaMeasure::atomic({{0.2, 1.0}, {0.7, -1.0}}));
        }) == "hypothesis violated: lambda[0,1] != 0");
  CHECK(hypothesis_message([] {
          witness_thm56(c01::PwlFunction::constant(2.0), c01::PwlFunction::constant(1.0));
        }) == "hypothesis violated: ||u|| > ||f||");
  CHECK(hypothesis_message([] {
          witness_cor57(c01::PwlFunction::tent(), c01::PwlFunction::constant(3.0));
        }) == "hypothesis violated: f nondecreasing");

  const L1Space sp(l1::uniform_space(3));
  const auto f = sp.primal(VectorXd{{1.0, 2.0, -1.0}});
  CHECK(hypothesis_message([&] {
          witness_thm46(sp, sp.dual(VectorXd{{1.0, 0.0, 0.0}}), l1::SubsetMask::Constant(3, false));
        }) == "hypothesis violated: D is nonempty");
  CHECK(hypothesis_message([&] {
          witness_thm46(sp, sp.dual(VectorXd{{1.0, -1.0, 0.0}}), l1::mask_from_indices(3, {0, 1}));
        }) == "hypothesis violated: D lies inside {k* > 0} or inside {k* < 0}");
  CHECK(hypothesis_message([&] {
          witness_thm45_case1(sp, sp.primal(VectorXd{{1.0, 0.0, 1.0}}), sp.dual(VectorXd{{1.0, 1.0, 1.0}}));
        }) == "hypothesis violated: f has no zeros (J(f) is a singleton)");
  CHECK(hypothesis_message([&] {
          witness_thm45_case1(sp, f, sp.dual(VectorXd{{1.0, 0.0, 1.0}}));
        }) == "hypothesis violated: <k*, f> != 0");
  CHECK(hypothesis_message([&] {
          witness_thm45_case2(sp, f, sp.dual(VectorXd{{1.0, 0.0, 0.0}}));
        }) == "hypothesis violated: <k*, f> = 0");
  CHECK(hypothesis_message([&] { witness_thm47(sp, f); }) == "hypothesis violated: f in the positive cone");
  CHECK(hypothesis_message([&] {
          witness_cor48(sp, sp.primal(VectorXd{{1.0, 1.0, 1.0}}), sp.dual(VectorXd{{4.0, 2.0, 4.0}}));
        }) == "hypothesis violated: u* > J(f) = ||f||_1 at every point");
}

TEST_CASE("thm45 case 2 keeps the window open when moving away from zero") {
  const L1Space sp(l1::uniform_space(2));
  const auto f = sp.primal(VectorXd{{1.0, -1.0}});
  const auto k = sp.dual(VectorXd{{1.0, 1.0}});
  const auto w = witness_thm45_case2(sp, f, k, l1::mask_from_indices(2, {0}));
  CHECK(w.bound == 0.5);
  const auto c = certify(w);
  CHECK(c.verdict == Verdict::certified);
  CHECK_FALSE(c.estimate.t0_shrunk);

  // D = {1} moves f(1) = -1 toward zero and needs a <= 1.
  const auto toward = witness_thm45_case2(sp, f, k, l1::mask_from_indices(2, {1}), 0.5);
  CHECK(toward.curve.t_max <= 0.5);
  CHECK(certify(toward).verdict == Verdict::certified);
  CHECK_THROWS_AS(witness_thm45_case2(sp, f, k, l1::mask_from_indices(2, {1}), 1.5), HypothesisError);
}

TEST_CASE("thm55 handles the zero function and the opposite extreme") {
  const auto lambda = c01::RcaMeasure::atomic({{0.3, 2.0}});
  const auto z = witness_thm55(c01::PwlFunction(), lambda);
  CHECK(z.bound == 1.0);
  CHECK(certify(z).verdict == Verdict::certified);

  // f <= 0 everywhere and a positive mass: the shift goes upward.
  const auto neg = c01::PwlFunction::tent().scaled(-1.0);
  const auto w = witness_thm55(neg, lambda);
  CHECK(w.curve.id.find("opposite") != std::string::npos);
  CHECK(certify(w).verdict == Verdict::certified);
}

TEST_CASE("builders agree with independent closed forms on random draws") {
  draws::Rng rng(51);
  for (const auto& row : draws::closed_form_rows()) {
    for (int s = 0; s < 20; ++s) {
      const auto d = row.draw(rng);
      INFO(row.id << " draw " << s);
      CHECK(bound_of(d.witness) == doctest::Approx(d.oracle_bound).epsilon(1e-9));
      const auto c = certify(d.witness);
      CHECK(c.verdict == Verdict::certified);
      CHECK(std::abs(c.estimate.limit - d.oracle_bound) <= 1e-5);
    }
  }
}

TEST_CASE("thm31 draws at the origin and in l2") {
  draws::Rng rng(52);
  for (int s = 0; s < 40; ++s) {
    const auto d = draws::draw_thm31(rng, s % 2 == 0);
    const auto c = certify(d.witness);
    CHECK(c.verdict == Verdict::certified);
    CHECK(std::abs(c.estimate.limit - d.oracle_bound) <= 1e-5);
  }
}
