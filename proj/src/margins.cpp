#include "pdregion/margins.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "pdregion/error.hpp"
#include "pdregion/parallel.hpp"

namespace pdregion {

namespace {

constexpr double kPi = std::numbers::pi;

// Golden-section minimum of f over [ln a, ln b].
std::pair<double, double> golden_min_log(const std::function<double(double)>& f, double a, double b) {
  double lo = std::log(a);
  double hi = std::log(b);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(std::exp(x2));
    }
  }
  return f1 < f2 ? std::pair{std::exp(x1), f1} : std::pair{std::exp(x2), f2};
}

// Sum in a fixed binary tree so the result does not depend on thread count.
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

RobustnessResult robustness_distance(const RationalFunction& g0, double sigma, const GridSpec& grid,
                                     const ToleranceConfig& tol) {
  if (!(sigma > 0.0)) throw DomainError("robustness distance needs sigma > 0");
  const double r = 1.0 / (2.0 * sigma);
  auto depth = [&](double w) { return r - std::abs(g0.freq(w, tol) - r); };

  const std::vector<double> ws = grid.samples();
  std::vector<double> vals(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) vals[i] = depth(ws[i]);

  RobustnessResult out;
  out.w_min = ws.front();
  out.w_max = ws.back();
  out.tangent_at_infinity = g0.is_strictly_proper();
  out.d_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (vals[i] < out.d_min) {
      out.d_min = vals[i];
      out.argmin_frequency = ws[i];
    }
    const bool local = (i == 0 || vals[i] <= vals[i - 1]) && (i + 1 == ws.size() || vals[i] <= vals[i + 1]);
    if (!local || ws.size() < 2) continue;
    const auto m = golden_min_log(depth, ws[i == 0 ? 0 : i - 1], ws[i + 1 == ws.size() ? i : i + 1]);
    if (m.second < out.d_min) {
      out.d_min = m.second;
      out.argmin_frequency = m.first;
    }
  }
  return out;
}

bool check_perturbation(const RationalFunction& g0, double sigma, double delta_norm, const GridSpec& grid,
                        const ToleranceConfig& tol) {
  return delta_norm < robustness_distance(g0, sigma, grid, tol).d_min;
}

double varsigma(const RationalFunction& g, double w) {
  const Complex s(0.0, w);
  const Complex n = g.num().eval(s);
  if (std::abs(n) <= 1e-300) throw DomainError("G has a zero on the axis at w = " + std::to_string(w));
  return (g.den().eval(s) / n).real();
}

WaterbedResult waterbed_identity(const RationalFunction& g, double a, const QuadSpec& quad,
                                 const ToleranceConfig& tol) {
  if (!(a > 0.0)) throw DomainError("waterbed identity needs a > 0");
  if (g.num().is_zero() || !g.is_strictly_proper()) {
    throw DomainError("waterbed identity needs a nonzero strictly proper G");
  }
  if (!classify(g, tol).minimal_phase) throw DomainError("waterbed identity needs a minimum-phase G");
  if (std::abs(g.num().eval(a)) <= 1e-300) throw DomainError("a is a pole of the remainder");

  const InverseDecomposition dec = inverse_decomposition(g);
  WaterbedResult out;
  out.a = a;
  out.relative_degree = g.relative_degree();
  out.lhs = g.den().eval(a) / g.num().eval(a) - dec.L.eval(a);

  // Re(1/G(jw)) - Re L(jw) = C + Re R(jw): the polynomial growth cancels
  // symbolically, so the integrand stays bounded at the ends.
  auto integrand = [&](double phi) {
    const double w = a * std::tan(phi);
    return (dec.C + dec.R.freq(w, tol).real()) / kPi;
  };
  auto estimate = [&](int panels) {
    const double width = kPi / panels;
    const std::vector<double> parts = parallel_map<double>(static_cast<std::size_t>(panels), [&](std::size_t k) {
      const double lo = -kPi / 2.0 + width * static_cast<double>(k);
      return boost::math::quadrature::gauss<double, 15>::integrate(integrand, lo, lo + width);
    });
    return pairwise_sum(parts, 0, parts.size());
  };

  int panels = std::max(1, quad.initial_panels);
  double prev = estimate(panels);
  while (true) {
    panels *= 2;
    if (panels > quad.max_panels) throw ConvergenceError("waterbed quadrature did not converge");
    const double cur = estimate(panels);
    const bool done = std::abs(cur - prev) < quad.tolerance;
    prev = cur;
    if (done) break;
  }
  out.rhs_quadrature = prev;
  out.panels = panels;
  out.abs_error = std::abs(out.lhs - out.rhs_quadrature);
  return out;
}

WaterbedBound waterbed_bound(const RationalFunction& g, double sigma, double w_c, double a, const GridSpec& grid,
                             const ToleranceConfig& tol) {
  if (!(a > 0.0)) throw DomainError("waterbed bound needs a > 0");
  if (!(w_c > 0.0)) throw DomainError("waterbed bound needs w_c > 0");
  if (g.num().is_zero() || g.relative_degree() != 1) throw DomainError("waterbed bound needs relative degree 1");
  if (!classify(g, tol).minimal_phase) throw DomainError("waterbed bound needs a minimum-phase G");

  WaterbedBound out;
  out.min_varsigma_low = varsigma(g, 0.0);
  std::vector<double> low{0.0};
  std::vector<double> high;
  for (double w : grid.samples()) (w <= w_c ? low : high).push_back(w);
  low.push_back(w_c);
  const double slack = 1e-12 * (1.0 + std::abs(sigma));
  for (double w : low) {
    const double v = varsigma(g, w);
    out.min_varsigma_low = std::min(out.min_varsigma_low, v);
    if (v < sigma - slack) {
      throw DomainError("Re(1/G) = " + std::to_string(v) + " < sigma at w = " + std::to_string(w));
    }
  }
  for (double w : high) {
    if (w > grid.w_max) break;
    const double v = varsigma(g, w);
    if (v < -slack) throw DomainError("Re(1/G) = " + std::to_string(v) + " < 0 at w = " + std::to_string(w));
  }

  const InverseDecomposition dec = inverse_decomposition(g);
  const double l1 = dec.L[1];
  out.lhs = g.den().eval(a) / g.num().eval(a) - l1 * a;
  out.printed_bound = sigma / kPi * std::atan(w_c / a);
  out.bound = 2.0 * out.printed_bound;
  out.satisfied = out.lhs >= out.bound - 1e-12 * (1.0 + std::abs(out.bound));
  return out;
}

}  // namespace pdregion
