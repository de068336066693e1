#include "dualmap/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "dualmap/c01_space.hpp"
#include "dualmap/lp_space.hpp"

namespace dualmap {

GradientOracleResult gradient_oracle_lp(const Eigen::VectorXd& x, double p, double step) {
  lp::check_exponent(p);
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  // Evaluated in long double from the definition; shares nothing with lp::norm.
  auto half_sq = [p](const Eigen::VectorXd& v) {
    long double s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs((long double)v(i)), (long double)p);
    return 0.5L * std::pow(s, 2.0L / p);
  };
  GradientOracleResult out;
  out.gradient.resize(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (p < 2.0 && std::abs(x(i)) <= 10 * step) {
      out.flagged.push_back(i);
      out.gradient(i) = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    probe(i) = x(i) + step;
    const long double up = half_sq(probe);
    probe(i) = x(i) - step;
    const long double down = half_sq(probe);
    probe(i) = x(i);
    out.gradient(i) = static_cast<double>((up - down) / (2.0L * step));
  }
  return out;
}

bool matches_selection_template(const l1::LinftySelection& g, const l1::L1Function& f,
                                double tol) {
  const double n = l1::l1_norm(f);
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = f.values(i), gi = g.values(i);
    if (v > 0 && std::abs(gi - n) > tol) return false;
    if (v < 0 && std::abs(gi + n) > tol) return false;
    if (v == 0 && std::abs(gi) > n + tol) return false;
  }
  return true;
}

std::vector<l1::LinftySelection> brute_force_duality_l1(const l1::L1Function& f, int grid_steps) {
  const auto n_points = f.size();
  if (n_points > kBruteForceMaxPoints)
    throw DomainError("brute force limited to " + std::to_string(kBruteForceMaxPoints) + " points");
  if (grid_steps < 2 || grid_steps > kBruteForceMaxSteps)
    throw DomainError("grid steps must lie in [2, " + std::to_string(kBruteForceMaxSteps) + "]");
  const double n = l1::l1_norm(f);
  if (n == 0.0) return {l1::LinftySelection::zero(f.space)};

  const double delta = 2 * n / (grid_steps - 1);
  double min_mass = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n_points; ++i)
    if (f.values(i) != 0.0) min_mass = std::min(min_mass, std::abs(f.values(i)) * f.space->weight(i));
  const double tol = 0.5 * delta * min_mass;

  std::vector<l1::LinftySelection> found;
  std::vector<int> k(static_cast<std::size_t>(n_points), 0);
  Eigen::VectorXd g(n_points);
  while (true) {
    for (Eigen::Index i = 0; i < n_points; ++i)
      g(i) = -n + 2 * n * k[static_cast<std::size_t>(i)] / (grid_steps - 1);
    l1::LinftySelection sel(f.space, g);
    if (l1::is_duality_member(sel, f, tol)) found.push_back(std::move(sel));
    std::size_t d = 0;
    while (d < k.size() && ++k[d] == grid_steps) k[d++] = 0;
    if (d == k.size()) break;
  }
  return found;
}

std::string SpaceDescriptor::label() const {
  if (kind == "lp") return "lp(p=" + std::to_string(p) + ")";
  if (kind == "l1") return "l1(" + std::to_string(weights.size()) + " points)";
  return kind;
}

bool SuiteReport::all_pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const auto& r) { return r.pass; });
}

const PropertyRecord* SuiteReport::find(const std::string& id) const {
  for (const auto& r : properties)
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double prob) { return std::bernoulli_distribution(prob)(rng); }

double nonzero_scalar(Rng& rng) {
  const double a = uniform(rng, 0.1, 3.0);
  return coin(rng, 0.5) ? a : -a;
}

// Accumulates max violation over samples; a property that is never fed is
// reported as not applicable.
class Recorder {
 public:
  Recorder(std::string id, std::string description, double tol = 1e-9)
      : rec_{std::move(id), std::move(description), 0, 0.0, tol, true, true} {}

  void add(double violation) {
    ++rec_.samples;
    if (!(violation <= rec_.max_violation)) rec_.max_violation = violation;  // NaN sticks
  }
  void add_flag(bool ok) { add(ok ? 0.0 : 1.0); }

  PropertyRecord finish() const {
    PropertyRecord r = rec_;
    if (r.samples == 0) {
      r.applicable = false;
      r.pass = true;
    } else {
      r.pass = r.max_violation <= r.tolerance;
    }
    return r;
  }

 private:
  PropertyRecord rec_;
};

double rel(double diff, double scale) { return std::abs(diff) / std::max(1.0, scale); }

// ---- l_p ------------------------------------------------------------------

Eigen::VectorXd random_vector(Rng& rng, Eigen::Index dim, double mag) {
  Eigen::VectorXd x(dim);
  for (Eigen::Index i = 0; i < dim; ++i) x(i) = uniform(rng, -mag, mag);
  return x;
}

std::vector<PropertyRecord> battery_lp(double p, int samples, Rng& rng) {
  Recorder j1("J1", "J(x) is a member of the duality set"), j2("J2", "J = I when p = 2"),
      j3("J3", "J(0) = 0*"), j4("J4", "J(a x) = a J(x)"), j5("J5", "monotonicity"),
      j6("J6", "two-sided subgradient inequality"), rt("round_trip", "J*(J(x)) = x");
  const double q = lp::conjugate_exponent(p);
  for (int s = 0; s < samples; ++s) {
    const Eigen::Index dim = uniform_int(rng, 1, 16);
    const Eigen::VectorXd x = random_vector(rng, dim, 10.0);
    const Eigen::VectorXd y = random_vector(rng, dim, 10.0);
    const Eigen::VectorXd jx = lp::duality_map(x, p), jy = lp::duality_map(y, p);
    const double nx = lp::norm(x, p), ny = lp::norm(y, p);

    j1.add(std::max(rel(lp::norm(jx, q) - nx, nx), rel(lp::pairing(jx, x) - nx * nx, nx * nx)));
    if (p == 2.0) j2.add((jx - x).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff()));
    j3.add(lp::duality_map(Eigen::VectorXd::Zero(dim), p).cwiseAbs().maxCoeff());
    const double a = nonzero_scalar(rng);
    j4.add((lp::duality_map((a * x).eval(), p) - a * jx).cwiseAbs().maxCoeff() /
           std::max(1.0, std::abs(a) * nx));
    const double scale = (nx + ny) * (nx + ny);
    j5.add(std::max(0.0, -lp::pairing((jx - jy).eval(), (x - y).eval())) / std::max(1.0, scale));
    const double mid = nx * nx - ny * ny;
    const double lo = 2 * lp::pairing(jy, (x - y).eval()), hi = 2 * lp::pairing(jx, (x - y).eval());
    j6.add(std::max({0.0, lo - mid, mid - hi}) / std::max(1.0, scale));
    rt.add((lp::dual_duality_map(jx, q) - x).cwiseAbs().maxCoeff() /
           std::max(1.0, x.cwiseAbs().maxCoeff()));
  }
  return {j1.finish(), j2.finish(), j3.finish(), j4.finish(),
          j5.finish(), j6.finish(), rt.finish()};
}

// ---- L_1 ------------------------------------------------------------------

l1::L1Function random_l1(Rng& rng, const l1::SpacePtr& space) {
  Eigen::VectorXd v(space->size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = coin(rng, 0.25) ? 0.0 : uniform(rng, -5, 5);
  return l1::L1Function(space, v);
}

Eigen::VectorXd random_free_values(Rng& rng, const l1::L1Function& f) {
  const double n = l1::l1_norm(f);
  const auto zeros = (f.values.array() == 0.0).count();
  Eigen::VectorXd a(zeros);
  for (Eigen::Index i = 0; i < zeros; ++i) a(i) = uniform(rng, -n, n);
  return a;
}

std::vector<PropertyRecord> battery_l1(const Eigen::VectorXd& weights, int samples, Rng& rng) {
  Recorder j1("J1", "selections and their midpoints are members"), j2("J2", "J = I (Hilbert only)"),
      j3("J3", "J(0) = 0*"), j4("J4", "J(a f) = a J(f) for canonical selections"),
      j5("J5", "monotonicity"), j6("J6", "two-sided subgradient inequality"),
      sc("selection_scaling", "a jf(f, free) = jf(a f, a free) for a > 0"),
      cl("classify", "singleton iff no zeros; the selection is then +-||f||_1"),
      cx("strict_convexity", "midpoint of chi_A/mu(A), chi_B/mu(B) has norm exactly 1");
  const auto space = l1::make_space(weights);
  const Eigen::Index n_points = space->size();
  for (int s = 0; s < samples; ++s) {
    const auto f = random_l1(rng, space), g = random_l1(rng, space);
    const double nf = l1::l1_norm(f), ng = l1::l1_norm(g);
    const auto jf = l1::canonical_selection(f), jg = l1::canonical_selection(g);
    auto member_violation = [](const l1::LinftySelection& sel, const l1::L1Function& h) {
      const double n = l1::l1_norm(h);
      return std::max(rel(l1::linf_norm(sel) - n, n), rel(l1::pairing(sel, h) - n * n, n * n));
    };

    double v1 = member_violation(jf, f);
    if (nf > 0) {
      const auto s1 = l1::duality_selection(f, random_free_values(rng, f));
      const auto s2 = l1::duality_selection(f, random_free_values(rng, f));
      v1 = std::max({v1, member_violation(s1, f), member_violation(0.5 * (s1 + s2), f)});
    }
    j1.add(v1);
    j3.add(l1::linf_norm(l1::canonical_selection(l1::L1Function::zero(space))));
    const double a = nonzero_scalar(rng);
    j4.add(l1::linf_norm(l1::canonical_selection(a * f) - a * jf) / std::max(1.0, std::abs(a) * nf));
    const double scale = (nf + ng) * (nf + ng);
    j5.add(std::max(0.0, -l1::pairing(jf - jg, f - g)) / std::max(1.0, scale));
    const double mid = nf * nf - ng * ng;
    const double lo = 2 * l1::pairing(jg, f - g), hi = 2 * l1::pairing(jf, f - g);
    j6.add(std::max({0.0, lo - mid, mid - hi}) / std::max(1.0, scale));

    if (nf > 0) {
      const double b = uniform(rng, 0.1, 3.0);
      const Eigen::VectorXd free = random_free_values(rng, f);
      const auto lhs = b * l1::duality_selection(f, free);
      const auto rhs = l1::duality_selection(b * f, b * free);
      sc.add(l1::linf_norm(lhs - rhs) / std::max(1.0, b * nf));

      const auto cls = l1::duality_set_classify(f);
      bool ok = cls.singleton == !(f.values.array() == 0.0).any();
      if (cls.singleton) ok = ok && matches_selection_template(jf, f, 0.0);
      cl.add_flag(ok);
    }

    if (n_points >= 2) {
      l1::SubsetMask ma = l1::SubsetMask::Constant(n_points, false), mb = ma;
      for (Eigen::Index i = 0; i < n_points; ++i) {
        const int pick = uniform_int(rng, 0, 2);
        ma(i) = pick == 0;
        mb(i) = pick == 1;
      }
      if (!ma.any()) {
        const Eigen::Index i = uniform_int(rng, 0, static_cast<int>(n_points) - 1);
        ma(i) = true;
        mb(i) = false;
      }
      if (!mb.any()) {
        Eigen::Index i = 0;
        while (ma(i) && ma.count() == 1) ++i;  // keep A nonempty
        ma(i) = false;
        mb(i) = true;
      }
      if (ma.any() && mb.any())
        cx.add(std::abs(l1::strict_convexity_counterexample(space, ma, mb).midpoint_norm - 1.0));
    }
  }
  auto j2r = j2.finish();
  j2r.description = "J = I (Hilbert only; L1 is not a Hilbert space)";
  auto cxr = cx.finish();
  cxr.tolerance = 0.0;
  cxr.pass = !cxr.applicable || cxr.max_violation == 0.0;
  return {j1.finish(), j2r, j3.finish(), j4.finish(), j5.finish(), j6.finish(),
          sc.finish(), cl.finish(), cxr};
}

// ---- C[0,1] ---------------------------------------------------------------

c01::PwlFunction random_pwl(Rng& rng) {
  const int count = uniform_int(rng, 2, 16);
  std::vector<double> inner;
  while (static_cast<int>(inner.size()) < count - 2) {
    const double s = uniform(rng, 0.0, 1.0);
    if (s > 1e-6 && s < 1 - 1e-6 &&
        std::none_of(inner.begin(), inner.end(), [s](double o) { return std::abs(o - s) < 1e-6; }))
      inner.push_back(s);
  }
  std::sort(inner.begin(), inner.end());
  Eigen::VectorXd bp(count), v(count);
  bp(0) = 0.0;
  bp(count - 1) = 1.0;
  for (int i = 0; i < count - 2; ++i) bp(i + 1) = inner[static_cast<std::size_t>(i)];
  for (int i = 0; i < count; ++i) v(i) = uniform(rng, -3, 3);
  const double peak = v.cwiseAbs().maxCoeff();
  if (count >= 2 && coin(rng, 0.3)) {
    // plateau at +-peak
    const int i = uniform_int(rng, 0, count - 2);
    const double level = coin(rng, 0.5) ? peak : -peak;
    v(i) = level;
    v(i + 1) = level;
  }
  if (coin(rng, 0.2)) {
    // both +peak and -peak attained
    Eigen::Index top = 0;
    v.cwiseAbs().maxCoeff(&top);
    const int j = uniform_int(rng, 0, count - 1);
    if (j != top) v(j) = v(top) > 0 ? -peak : peak;
  }
  return c01::PwlFunction(bp, v);
}

std::vector<PropertyRecord> battery_c01(int samples, Rng& rng) {
  Recorder j1("J1", "duality measures and their midpoints are members on M(f)"),
      j2("J2", "J = I (Hilbert only)"), j3("J3", "J(0) = 0*"),
      j4("J4", "J(a f) = a J(f) for canonical measures"), j5("J5", "monotonicity"),
      j6("J6", "two-sided subgradient inequality"),
      lm("scaling_maximizing_set", "M(t f) = M(f) for t in {-2, 0.5, 3}"),
      pl("plateau_measure", "plateau measures are members supported on M(f)"),
      bl("pairing_bilinear", "pairing is additive in both arguments");
  const double tol_member = 1e-10;
  for (int s = 0; s < samples; ++s) {
    const auto f = random_pwl(rng), g = random_pwl(rng);
    const double nf = c01::sup_norm(f), ng = c01::sup_norm(g);
    const auto mf = c01::canonical_duality_measure(f), mg = c01::canonical_duality_measure(g);
    auto member_violation = [](const c01::RcaMeasure& mu, const c01::PwlFunction& h) {
      const double n = c01::sup_norm(h);
      const double v = std::max(rel(c01::tv_norm(mu) - n, n), rel(c01::pairing(mu, h) - n * n, n * n));
      return c01::is_duality_member(mu, h, 1e-9 * std::max(1.0, n * n)).support_ok ? v : 1.0;
    };

    // Random alphas over the maximizing representatives.
    const auto reps = c01::maximizing_set(f).representatives();
    std::vector<double> alphas(reps.size());
    double total = 0;
    for (auto& a : alphas) total += (a = uniform(rng, 0.1, 1.0));
    for (auto& a : alphas) a /= total;
    const auto mu_r = c01::atomic_duality_measure(f, reps, alphas);
    j1.add(std::max({member_violation(mf, f), member_violation(mu_r, f),
                     member_violation(0.5 * (mf + mu_r), f)}));

    j3.add(c01::tv_norm(c01::canonical_duality_measure(c01::PwlFunction::constant(0.0))));
    const double a = nonzero_scalar(rng);
    j4.add(c01::tv_norm(c01::canonical_duality_measure(a * f) - a * mf) /
           std::max(1.0, std::abs(a) * nf));
    const double scale = (nf + ng) * (nf + ng);
    const auto diff = f - g;
    j5.add(std::max(0.0, -c01::pairing(mf - mg, diff)) / std::max(1.0, scale));
    const double mid = nf * nf - ng * ng;
    const double lo = 2 * c01::pairing(mg, diff), hi = 2 * c01::pairing(mf, diff);
    j6.add(std::max({0.0, lo - mid, mid - hi}) / std::max(1.0, scale));

    const auto m = c01::maximizing_set(f);
    bool same = true;
    for (double t : {-2.0, 0.5, 3.0}) same = same && c01::same_set(c01::maximizing_set(t * f), m);
    lm.add_flag(same);

    for (const auto& iv : m.intervals) {
      const double sign = f(iv.lo) > 0 ? 1.0 : -1.0;
      const auto pos = sign * f;
      const auto mu = sign * c01::plateau_duality_measure(pos, iv.lo, iv.hi);
      const auto rep = c01::is_duality_member(mu, f, tol_member * std::max(1.0, nf * nf));
      pl.add(rep.support_ok ? member_violation(mu, f) : 1.0);
    }

    const double lhs1 = c01::pairing(mf, f + g), rhs1 = c01::pairing(mf, f) + c01::pairing(mf, g);
    const double lhs2 = c01::pairing(mf + mg, f), rhs2 = c01::pairing(mf, f) + c01::pairing(mg, f);
    bl.add(std::max(rel(lhs1 - rhs1, nf * (nf + ng)), rel(lhs2 - rhs2, nf * (nf + ng))));
  }
  return {j1.finish(), j2.finish(), j3.finish(), j4.finish(), j5.finish(),
          j6.finish(), lm.finish(), pl.finish(), bl.finish()};
}

}  // namespace

SuiteReport run_appendix_battery(const SpaceDescriptor& space, int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("battery needs at least one sample");
  Rng rng(seed);
  SuiteReport report;
  report.seed = seed;
  report.space = space.label();
  if (space.kind == "lp") {
    lp::check_exponent(space.p);
    report.properties = battery_lp(space.p, samples, rng);
  } else if (space.kind == "l1") {
    report.properties = battery_l1(space.weights, samples, rng);
  } else if (space.kind == "c01") {
    report.properties = battery_c01(samples, rng);
  } else {
    throw DomainError("unknown space '" + space.kind + "'");
  }
  return report;
}

}  // namespace dualmap
