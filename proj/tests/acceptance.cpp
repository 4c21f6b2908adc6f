// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "pdregion/bands.hpp"
#include "pdregion/error.hpp"
#include "pdregion/genpass.hpp"
#include "pdregion/margins.hpp"
#include "pdregion/passivity.hpp"
#include "pdregion/pdcore.hpp"
#include "support.hpp"

using namespace pdregion;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : "; ") + s;
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

GridSpec grid(double w_min, double w_max, int ppd = 100) {
  GridSpec g;
  g.w_min = w_min;
  g.w_max = w_max;
  g.points_per_decade = ppd;
  return g;
}

double g3_edge(double sigma) { return std::sqrt((0.5 - sigma) / (0.02 * 0.3)); }

bool is_decade_point(double w, int per_decade) {
  const double k = std::round(std::log10(w) * per_decade);
  return w == std::pow(10.0, k / per_decade);
}

int rhp_roots(const Polynomial& p) {
  if (p.degree() < 1) return 0;
  int n = 0;
  for (Complex z : roots(p)) n += z.real() > 1e-9 ? 1 : 0;
  return n;
}

bool covers(const FrequencyBand& b, const GridSpec& g) {
  return b.intervals.size() == 1 && b.intervals[0].lo.w == 0.0 && b.intervals[0].hi.w >= g.w_max * (1.0 - 1e-12);
}

RealMatrix random_pd(testing::Gen& gen, int p, double scale) {
  const Eigen::MatrixXd x = gen.symmetric(p, -1.0, 1.0);
  return scale * (x * x.transpose() + 0.05 * Eigen::MatrixXd::Identity(p, p));
}

ComplexMatrix friendly_matrix(testing::Gen& gen, int p) {
  const ComplexMatrix x = gen.matrix(p);
  return x * x.adjoint() + 0.2 * ComplexMatrix::Identity(p, p) + Complex(0.0, 1.0) * gen.hermitian(p) +
         0.3 * gen.matrix(p);
}

// 1. Critical-frequency table for G3.
Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const std::pair<double, double> table[] = {{-0.5, 13.1826}, {-0.2, 10.9648}, {0.0, 9.3325}, {0.2, 7.0795}};
  for (const auto& [sigma, want] : table) {
    const double w = first_failing_grid_point(testing::g3(), sigma, 0.01);
    o.require(std::abs(w - want) < 5e-5 && is_decade_point(w, 100),
              "grid point at sigma " + fmt(sigma) + " is " + fmt(w, 8));
  }
  const FrequencyBand half = pd_band(RationalMatrix(testing::g3()), 0.5, {}, BandMode::siso_exact);
  o.require(half.intervals.size() == 1 && half.intervals[0].lo.w == 0.0 && half.intervals[0].hi.w == 0.0,
            "band at sigma 0.5 is not {0}");
  double worst = 0.0;
  for (double sigma : {-0.5, -0.2, 0.0, 0.2, 1.0 / 3.0}) {
    const FrequencyBand b = pd_band(RationalMatrix(testing::g3()), sigma, {}, BandMode::siso_exact);
    if (b.intervals.size() != 1) {
      o.require(false, "band at sigma " + fmt(sigma) + " is not one interval");
      continue;
    }
    worst = std::max(worst, std::abs(b.intervals[0].hi.w - g3_edge(sigma)) / g3_edge(sigma));
  }
  o.require(worst <= 1e-6, "edge error " + fmt(worst));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(seconds < 5.0, "runtime " + fmt(seconds) + " s");
  o.note("grid points 13.1826 10.9648 9.3325 7.0795, sigma 0.5 -> {0}, max edge error " + fmt(worst, 3) +
         ", " + fmt(seconds, 3) + " s");
  return o;
}

// 2. G3 at sigma = 1/3.
Outcome criterion2() {
  Outcome o;
  const FrequencyBand b = pd_band(RationalMatrix(testing::g3()), 1.0 / 3.0, grid(1e-3, 1e2), BandMode::siso_exact);
  const double edge = b.intervals.empty() ? -1.0 : b.intervals[0].hi.w;
  o.require(std::abs(edge - 5.27046) <= 1e-5, "edge " + fmt(edge, 9));
  const double w = first_failing_grid_point(testing::g3(), 1.0 / 3.0, 0.01);
  o.require(std::abs(w - 5.3703) < 5e-5, "grid point " + fmt(w, 8));
  o.note("edge " + fmt(edge, 9) + ", grid point " + fmt(w, 5));
  return o;
}

// 3. G1 output-feedback verdicts with the root oracle.
Outcome criterion3() {
  Outcome o;
  const RationalFunction g1 = testing::g1();
  const PassivityReport a = of_passivity_check(g1, 1.0 / 3.0);
  const PassivityReport b = of_passivity_check(g1, 1.0);
  o.require(a.verdict == PassivityVerdict::passive, "sigma 1/3 verdict " + to_string(a.verdict));
  o.require(b.verdict == PassivityVerdict::not_passive, "sigma 1 verdict " + to_string(b.verdict));
  // Independent count: the closed loop D - sigma N.
  const int unstable_a = rhp_roots(g1.den() - g1.num() * (1.0 / 3.0));
  const int unstable_b = rhp_roots(g1.den() - g1.num() * 1.0);
  o.require(unstable_a == 0 && unstable_b == 1, "closed-loop root counts");
  o.require(a.oracle_verdict && a.oracle_verdict->stable && a.oracle_verdict->min_real_part >= 0.0,
            "oracle at sigma 1/3");
  o.require(b.oracle_verdict && !b.oracle_verdict->stable, "oracle at sigma 1");
  o.note("sigma 1/3 passive, sigma 1 not_passive, oracle agrees");
  return o;
}

// 4. G2 bands and the residue at the origin.
Outcome criterion4() {
  Outcome o;
  for (double sigma : {0.0, 0.1, 1.0}) {
    const FrequencyBand b = pd_band(RationalMatrix(testing::g2()), sigma, {}, BandMode::siso_exact);
    o.require(b.empty(), "band at sigma " + fmt(sigma) + " not empty");
  }
  const std::vector<AxisResidue> r = axis_residues(testing::g2());
  const bool ok = r.size() == 1 && std::abs(r[0].residue - Complex(2.0, 0.0)) <= 1e-9 && r[0].ok;
  o.require(ok, "residue at 0");
  o.require(std::abs(residue_at(testing::g2(), 0.0) - Complex(2.0, 0.0)) <= 1e-9, "direct residue");
  o.note("empty bands at sigma 0, 0.1, 1; residue " + (r.empty() ? std::string("-") : fmt(r[0].residue.real(), 12)));
  return o;
}

// 5. G4 numerical-range check on the 0.1-decade sampling.
Outcome criterion5() {
  Outcome o;
  const RationalMatrix g4 = testing::g4();
  const PassivityIndex third(1.0 / 3.0);
  o.require(pd_check_mimo_necessary(g4, third, std::pow(10.0, 0.3)).verdict == Verdict::holds, "10^0.3");
  o.require(pd_check_mimo_necessary(g4, third, std::pow(10.0, 0.7)).verdict == Verdict::fails, "10^0.7");
  int exact_holds = 0, samples = 0;
  double first_fail = -1.0;
  for (int k = -30; k <= 20; ++k) {
    const double w = std::pow(10.0, k / 10.0);
    ++samples;
    const MimoNecessaryCheck n = pd_check_mimo_necessary(g4, third, w);
    if (n.verdict == Verdict::fails && first_fail < 0.0) first_fail = w;
    bool exact = false;
    try {
      exact = pd_check_mimo_exact(g4, third, w).holds;
    } catch (const SingularFeedbackError&) {
      continue;
    }
    if (!exact) continue;
    ++exact_holds;
    o.require(n.verdict == Verdict::holds, "implication at w = " + fmt(w));
  }
  o.note(std::to_string(exact_holds) + "/" + std::to_string(samples) +
         " samples hold exactly, all hold the range check; first range failure at " + fmt(first_fail, 5));
  return o;
}

// 6. Differential passivity of G3.
Outcome criterion6() {
  Outcome o;
  const PassivityReport a = gen_full_passivity(testing::g3(), 0.4, ROperator::differentiator());
  const PassivityReport b = gen_full_passivity(testing::g3(), 0.6, ROperator::differentiator());
  o.require(a.verdict == PassivityVerdict::passive, "sigma 0.4 verdict " + to_string(a.verdict));
  o.require(b.verdict == PassivityVerdict::not_passive, "sigma 0.6 verdict " + to_string(b.verdict));
  o.note("sigma 0.4 passive, sigma 0.6 not_passive");
  return o;
}

// 7. Poisson conservation identity.
Outcome criterion7() {
  Outcome o;
  const std::tuple<const char*, RationalFunction, double> named[] = {
      {"G1", testing::g1(), 0.5},
      {"G3", testing::g3(), 0.5},
      {"1/(s+1)", RationalFunction(Polynomial({1.0}), Polynomial({1.0, 1.0})), 1.0}};
  double worst = 0.0;
  for (const auto& [name, g, value] : named) {
    for (double a : {0.5, 1.0, 2.0}) {
      const WaterbedResult r = waterbed_identity(g, a);
      // 1/G(a) - L(a) is the constant term of 1/G for these three systems.
      o.require(std::abs(r.lhs - value) <= 1e-12, std::string(name) + " lhs " + fmt(r.lhs));
      o.require(r.abs_error <= 1e-6, std::string(name) + " error " + fmt(r.abs_error));
      worst = std::max(worst, r.abs_error);
    }
  }
  testing::Gen gen(907);
  for (int i = 0; i < 50; ++i) {
    const RationalFunction g = gen.minimum_phase(1 + i % 3);
    for (double a : {0.5, 1.0, 2.0}) {
      const WaterbedResult r = waterbed_identity(g, a);
      o.require(r.abs_error <= 1e-6, "random system " + std::to_string(i) + " error " + fmt(r.abs_error));
      worst = std::max(worst, r.abs_error);
    }
  }
  o.note("53 systems, a in {0.5, 1, 2}, max |lhs - rhs| " + fmt(worst, 3));
  return o;
}

struct CircleFit {
  double residual = 0.0;
  double radius = 0.0;
};

CircleFit fit_circle(const std::vector<Complex>& pts) {
  Eigen::MatrixXd a(pts.size(), 3);
  Eigen::VectorXd b(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    a(i, 0) = pts[i].real();
    a(i, 1) = pts[i].imag();
    a(i, 2) = 1.0;
    b(i) = -std::norm(pts[i]);
  }
  const Eigen::Vector3d x = a.colPivHouseholderQr().solve(b);
  const Complex c(-x(0) / 2.0, -x(1) / 2.0);
  CircleFit f;
  f.radius = std::sqrt(std::norm(c) - x(2));
  for (Complex z : pts) f.residual = std::max(f.residual, std::abs(std::abs(z - c) - f.radius));
  return f;
}

// 8. Property suites.
Outcome criterion8() {
  Outcome o;
  testing::Gen gen(908);

  // Disk form and inequality form of the scalar condition.
  double identity_err = 0.0;
  int sign_mismatch = 0;
  for (int i = 0; i < 20000; ++i) {
    const double sigma = gen.log_uniform(1e-2, 1e2);
    const Complex z = gen.complex(1.0 / sigma);
    const double c = 1.0 / (2.0 * sigma);
    const double ineq = z.real() - sigma * std::norm(z);
    const double disk = c * c - std::norm(z - c);  // equals ineq / sigma
    identity_err = std::max(identity_err, std::abs(disk - ineq / sigma) / (c * c + std::norm(z)));
    if (std::abs(ineq) > 1e-12 * (1.0 + sigma * std::norm(z)) &&
        (ineq >= 0.0) != region_contains(pd_region(sigma, FeedbackMode::output_feedback), z, 0.0)) {
      ++sign_mismatch;
    }
  }
  o.require(identity_err <= 1e-12 && sign_mismatch == 0, "disk/inequality equivalence");

  // Exact check implies the numerical-range check.
  int implied = 0, broken = 0;
  for (int i = 0; i < 500; ++i) {
    const int p = gen.integer(2, 3);
    const ComplexMatrix g = friendly_matrix(gen, p);
    const PassivityIndex s(random_pd(gen, p, gen.uniform(0.01, 0.3)));
    if (!pd_check_matrix_value(g, s).holds) continue;
    ++implied;
    if (!pd_check_range_value(g, s).holds) ++broken;
  }
  o.require(broken == 0 && implied >= 50, "exact => necessary (" + std::to_string(implied) + " holding)");

  // Contraction on random scalar systems.
  int not_contained = 0;
  for (int i = 0; i < 200; ++i) {
    const RationalFunction g = gen.stable_system(4);
    const double s1 = gen.uniform(0.01, 1.0), s2 = s1 + gen.uniform(0.01, 1.0);
    if (!contraction_check(RationalMatrix(g), s1, s2, grid(1e-2, 1e2, 50)).contained) ++not_contained;
  }
  o.require(not_contained == 0, "contraction (" + std::to_string(not_contained) + " failures)");

  // Block test against the direct test for positive definite indices.
  int schur_mismatch = 0;
  for (int i = 0; i < 500; ++i) {
    const int p = gen.integer(1, 3);
    const ComplexMatrix g = friendly_matrix(gen, p);
    const PassivityIndex s(random_pd(gen, p, gen.uniform(0.01, 0.5)));
    const MimoExactCheck c = pd_check_matrix_value(g, s);
    if (std::abs(c.lambda_min_value) < 1e-6) continue;
    if (schur_block_check_value(g, s) != c.holds) ++schur_mismatch;
  }
  o.require(schur_mismatch == 0, "block/direct agreement");

  // Circle preservation of the feedback map.
  double circle = 0.0;
  for (int checked = 0; checked < 100;) {
    const double a = gen.uniform(0.1, 5.0), b = gen.uniform(-3.0, 3.0), sigma = gen.uniform(-2.0, 2.0);
    const Complex c(b / (2.0 * a), 0.0);
    if (sigma == 0.0 || std::abs(std::abs(1.0 / sigma - c) - std::abs(c)) < 0.05 * (1.0 + std::abs(c))) continue;
    const RationalFunction h = of_transform(RationalFunction(Polynomial({b}), Polynomial({a, 1.0})), sigma);
    std::vector<Complex> pts;
    for (int k = 0; k < 200; ++k) pts.push_back(h.freq(a * std::tan(-kPi / 2.0 + kPi * (k + 0.5) / 200.0)));
    const CircleFit f = fit_circle(pts);
    circle = std::max(circle, f.residual / (1.0 + f.radius));
    ++checked;
  }
  o.require(circle <= 1e-7, "circle residual " + fmt(circle));

  // Gain ceiling against disk membership.
  int nichols_mismatch = 0;
  for (int i = 0; i < 5000; ++i) {
    const double sigma = gen.log_uniform(0.01, 10.0);
    const double phase = gen.uniform(-kPi / 2.0 + 1e-6, kPi / 2.0 - 1e-6);
    const double mag = gen.log_uniform(1e-3, 1e3) / sigma;
    const double db = 20.0 * std::log10(mag), bound = *nichols_bound(sigma, phase);
    if (std::abs(db - bound) < 1e-9) continue;
    if ((db <= bound) != region_contains(pd_region(sigma, FeedbackMode::output_feedback), std::polar(mag, phase), 1e-9))
      ++nichols_mismatch;
  }
  o.require(nichols_mismatch == 0, "Nichols/disk equivalence");

  // Numerical radius between half the norm and the norm, above the spectral radius.
  int sandwich = 0;
  for (int i = 0; i < 200; ++i) {
    const int p = gen.integer(1, 6);
    const ComplexMatrix m = gen.matrix(p, gen.log_uniform(0.01, 100.0));
    const double r = numerical_radius(m);
    const double norm = Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
    const double rho = Eigen::ComplexEigenSolver<ComplexMatrix>(m).eigenvalues().cwiseAbs().maxCoeff();
    const double slack = 1e-9 * (1.0 + norm);
    if (r < rho - slack || r < norm / 2.0 - slack || r > norm + slack) ++sandwich;
  }
  o.require(sandwich == 0, "numerical-radius sandwich");

  o.note("seven property families hold (circle residual " + fmt(circle, 3) + ")");
  return o;
}

// Perturbation of peak gain delta whose value at w points along angle theta.
RationalFunction aligned_delta(double delta, double w, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  if (std::abs(s) < 1e-12) return RationalFunction::constant(c > 0.0 ? delta : -delta);
  // (jw - b)/(jw + b) has angle pi - 2 atan(w / b), covering (0, pi).
  if (theta > 0.0) {
    const double b = w / std::tan((kPi - theta) / 2.0);
    return RationalFunction(Polynomial({-delta * b, delta}), Polynomial({b, 1.0}));
  }
  const double b = w / std::tan(-theta / 2.0);
  return RationalFunction(Polynomial({delta * b, -delta}), Polynomial({b, 1.0}));
}

RationalFunction random_delta(testing::Gen& gen, double delta) {
  const double b = gen.log_uniform(1e-2, 1e2);
  const double sign = gen.integer(0, 1) ? 1.0 : -1.0;
  if (gen.integer(0, 1)) return RationalFunction(Polynomial({sign * delta * b}), Polynomial({b, 1.0}));
  return RationalFunction(Polynomial({-sign * delta * b, sign * delta}), Polynomial({b, 1.0}));
}

// 9. Robustness radius.
Outcome criterion9() {
  Outcome o;
  testing::Gen gen(909);
  const GridSpec scan = grid(1e-2, 1e2, 50);
  int nominals = 0, attempts = 0, escaped = 0, caught = 0;
  while (nominals < 20 && attempts < 5000) {
    ++attempts;
    const RationalFunction g = gen.minimum_phase(1);
    const double sigma = gen.uniform(0.01, 0.5);
    const RobustnessResult r = robustness_distance(g, sigma, scan);
    if (r.d_min <= 1e-6) continue;
    if (of_passivity_check(g, sigma, scan).verdict != PassivityVerdict::passive) continue;
    ++nominals;
    const double c = 1.0 / (2.0 * sigma);
    for (int k = 0; k < 100; ++k) {
      const RationalFunction delta = random_delta(gen, 0.9 * r.d_min);
      for (double w : scan.samples()) {
        if (std::abs(g.freq(w) + delta.freq(w) - c) >= c) ++escaped;
      }
    }
    const double w = r.argmin_frequency;
    const RationalFunction adversary = aligned_delta(1.5 * r.d_min, w, std::arg(g.freq(w) - c));
    if (std::abs(g.freq(w) + adversary.freq(w) - c) > c) ++caught;
  }
  o.require(nominals == 20, "found " + std::to_string(nominals) + " nominals");
  o.require(escaped == 0, std::to_string(escaped) + " samples left the disk at 0.9 d_min");
  o.require(caught == nominals, "adversarial violation in " + std::to_string(caught) + " cases");
  o.note("20 nominals x 100 perturbations stay inside at 0.9 d_min; aligned perturbation at 1.5 d_min leaves "
         "the disk in all 20");
  return o;
}

// Derivative-output example for both candidate systems; informational.
void derivative_output_report() {
  const GridSpec scan;
  for (const auto& [name, g] : {std::pair{"G2", testing::g2()}, std::pair{"G3", testing::g3()}}) {
    std::string line = "derivative-output " + std::string(name) + ":";
    for (double sigma : {0.1, 0.3, 0.5, 1.0}) {
      const FrequencyBand b = gen_pd_band(derivative_output_system(g), sigma, ROperator::identity(), scan);
      line += " sigma " + fmt(sigma) + (covers(b, scan) ? " holds" : " fails") + ",";
    }
    line.pop_back();
    std::printf("info: %s\n", line.c_str());
  }
}

}  // namespace

int main() {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (int i = 0; i < 9; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %d: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  derivative_output_report();
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
