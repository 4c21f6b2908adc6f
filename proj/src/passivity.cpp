#include "pdregion/passivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "pdregion/error.hpp"
#include "pdregion/pdcore.hpp"

namespace pdregion {

namespace {

constexpr double kPi = std::numbers::pi;

using PathFn = std::function<Complex(double)>;

struct ArgSum {
  double total = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
};

// Adds the continuous change of arg f(t) over [t0, t1]. A step is accepted
// once the angle increment is small and the chord is short compared with the
// distance to the origin.
void refine_step(const PathFn& f, double t0, Complex f0, double t1, Complex f1, int depth, ArgSum& acc) {
  const double d = std::arg(f1 / f0);
  const double chord = std::abs(f1 - f0);
  const double near = std::min(std::abs(f0), std::abs(f1));
  const bool tiny = t1 - t0 <= 1e-14 * (1.0 + std::abs(t0) + std::abs(t1));
  if ((std::abs(d) <= 0.1 && chord <= 0.5 * near) || depth >= 60 || tiny) {
    acc.total += d;
    return;
  }
  const double tm = 0.5 * (t0 + t1);
  const Complex fm = f(tm);
  acc.min_abs = std::min(acc.min_abs, std::abs(fm));
  refine_step(f, t0, f0, tm, fm, depth + 1, acc);
  refine_step(f, tm, fm, t1, f1, depth + 1, acc);
}

// `ts` ascending; returns f at the last sample.
Complex accumulate(const PathFn& f, const std::vector<double>& ts, ArgSum& acc) {
  Complex prev = f(ts.front());
  acc.min_abs = std::min(acc.min_abs, std::abs(prev));
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const Complex cur = f(ts[i]);
    acc.min_abs = std::min(acc.min_abs, std::abs(cur));
    refine_step(f, ts[i - 1], prev, ts[i], cur, 0, acc);
    prev = cur;
  }
  return prev;
}

Complex value_at_infinity(const RationalFunction& g) {
  if (g.is_strictly_proper()) return 0.0;
  return g.num().leading() / g.den().leading();
}

// Nonnegative axis samples: 0, the grid, a 20-per-decade continuation and W.
std::vector<double> half_axis_samples(const GridSpec& grid, double w_top) {
  std::vector<double> ts{0.0};
  for (double w : grid.samples())
    if (w < w_top) ts.push_back(w);
  double w = ts.back() > 0.0 ? ts.back() : grid.w_min;
  while (true) {
    w *= std::pow(10.0, 0.05);
    if (w >= w_top) break;
    ts.push_back(w);
  }
  ts.push_back(w_top);
  return ts;
}

std::vector<double> full_axis_samples(const GridSpec& grid, double w_top) {
  const std::vector<double> half = half_axis_samples(grid, w_top);
  std::vector<double> ts;
  ts.reserve(2 * half.size());
  for (auto it = half.rbegin(); it != half.rend(); ++it)
    if (*it > 0.0) ts.push_back(-*it);
  ts.insert(ts.end(), half.begin(), half.end());
  return ts;
}

int finish_winding(const ArgSum& acc, Complex point, const ToleranceConfig& tol) {
  if (acc.min_abs <= tol.forbidden_point * (1.0 + std::abs(point))) {
    throw DomainError("the Nyquist curve passes through the point (min distance " + std::to_string(acc.min_abs) + ")");
  }
  const double turns = acc.total / (2.0 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= tol.winding_residual) {
    throw ConvergenceError("winding number residual " + std::to_string(std::abs(turns - rounded)) +
                           " exceeds the tolerance; refine the grid");
  }
  return static_cast<int>(rounded);
}

void require_proper(const RationalFunction& g) {
  if (!g.is_proper()) throw DomainError("winding number needs a proper transfer function");
}

double max_pole_modulus(const RationalFunction& g) {
  double m = 0.0;
  if (g.den().degree() >= 1)
    for (const Complex& r : roots(g.den())) m = std::max(m, std::abs(r));
  return m;
}

}  // namespace

double contour_extent(const RationalFunction& g, Complex point, const GridSpec& grid) {
  require_proper(g);
  const Complex ginf = value_at_infinity(g);
  const double gap = std::abs(point - ginf);
  if (gap == 0.0) throw DomainError("the Nyquist curve passes through the point at infinite frequency");
  double w = std::max(grid.w_max, 1e3 * (1.0 + max_pole_modulus(g)));
  for (int i = 0; i < 40 && std::abs(g.freq(w) - ginf) >= 0.5 * gap; ++i) w *= 10.0;
  if (std::abs(g.freq(w) - ginf) >= 0.5 * gap) {
    throw ConvergenceError("the Nyquist tail does not settle away from the point");
  }
  return w;
}

int winding_number_full(const RationalFunction& g, Complex point, const GridSpec& grid, const ToleranceConfig& tol) {
  require_proper(g);
  if (!classify(g, tol).imaginary_axis_poles.empty()) {
    throw DomainError("imaginary-axis poles need the detoured contour");
  }
  const double w_top = contour_extent(g, point, grid);
  const PathFn f = [&](double w) { return g.freq(w, tol) - point; };
  ArgSum acc;
  const Complex f_top = accumulate(f, full_axis_samples(grid, w_top), acc);
  acc.total += std::arg(f(-w_top) / f_top);
  return finish_winding(acc, point, tol);
}

int winding_number(const RationalFunction& g, Complex point, const GridSpec& grid, const ToleranceConfig& tol) {
  if (point.imag() != 0.0) return winding_number_full(g, point, grid, tol);
  require_proper(g);
  if (!classify(g, tol).imaginary_axis_poles.empty()) {
    throw DomainError("imaginary-axis poles need the detoured contour");
  }
  const double w_top = contour_extent(g, point, grid);
  const PathFn f = [&](double w) { return g.freq(w, tol) - point; };
  ArgSum acc;
  const Complex f_top = accumulate(f, half_axis_samples(grid, w_top), acc);
  // f(-jw) = conj(f(jw)) for a real point: the negative half adds the same angle.
  acc.total *= 2.0;
  acc.total += std::arg(std::conj(f_top) / f_top);
  return finish_winding(acc, point, tol);
}

int detoured_winding(const RationalFunction& g, Complex point, const GridSpec& grid, const ToleranceConfig& tol) {
  require_proper(g);
  const std::vector<double> axis = classify(g, tol).imaginary_axis_poles;
  if (axis.empty()) return winding_number(g, point, grid, tol);
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (axis[i] - axis[i - 1] <= 1e-6 * (1.0 + std::abs(axis[i]))) {
      throw DomainError("repeated imaginary-axis pole at w = " + std::to_string(axis[i]));
    }
  }

  const double w_top = contour_extent(g, point, grid);
  const PathFn on_axis = [&](double w) { return g.eval(Complex(0.0, w), tol) - point; };
  const std::vector<double> base = full_axis_samples(grid, w_top);

  ArgSum acc;
  double start = -w_top;
  Complex f_first = on_axis(-w_top);
  auto axis_segment = [&](double a, double b) {
    std::vector<double> ts{a};
    for (double t : base)
      if (t > a && t < b) ts.push_back(t);
    ts.push_back(b);
    accumulate(on_axis, ts, acc);
  };
  for (double w0 : axis) {
    const double eps = 1e-6 * (1.0 + std::abs(w0));
    axis_segment(start, w0 - eps);
    const PathFn arc = [&, w0, eps](double phi) {
      return g.eval(Complex(0.0, w0) + eps * std::polar(1.0, phi), tol) - point;
    };
    std::vector<double> phis;
    for (int k = 0; k <= 16; ++k) phis.push_back(-kPi / 2.0 + kPi * k / 16.0);
    accumulate(arc, phis, acc);
    start = w0 + eps;
  }
  axis_segment(start, w_top);
  acc.total += std::arg(f_first / on_axis(w_top));
  return finish_winding(acc, point, tol);
}

std::vector<AxisResidue> axis_residues(const RationalFunction& h, const ToleranceConfig& tol) {
  const std::vector<double> axis = classify(h, tol).imaginary_axis_poles;
  std::vector<AxisResidue> out;
  std::size_t i = 0;
  while (i < axis.size()) {
    std::size_t j = i + 1;
    while (j < axis.size() && axis[j] - axis[j - 1] <= 1e-6 * (1.0 + std::abs(axis[j]))) ++j;
    AxisResidue r;
    if (j - i > 1) {
      double sum = 0.0;
      for (std::size_t k = i; k < j; ++k) sum += axis[k];
      r.frequency = sum / static_cast<double>(j - i);
      r.simple = false;
      r.ok = false;
    } else {
      r.frequency = axis[i];
      r.residue = residue_at(h, Complex(0.0, axis[i]));
      r.ok = r.residue.real() >= -tol.residue && std::abs(r.residue.imag()) <= tol.residue * std::abs(r.residue);
    }
    out.push_back(r);
    i = j;
  }
  return out;
}

namespace {

// Golden-section minimum of f on [a, b] (log scale when a > 0).
std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b) {
  const bool log_scale = a > 0.0;
  auto to_w = [&](double x) { return log_scale ? std::exp(x) : x; };
  double lo = log_scale ? std::log(a) : a;
  double hi = log_scale ? std::log(b) : b;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(to_w(x1));
  double f2 = f(to_w(x2));
  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(to_w(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(to_w(x2));
    }
  }
  return f1 < f2 ? std::pair{to_w(x1), f1} : std::pair{to_w(x2), f2};
}

struct ScanMinimum {
  double value = std::numeric_limits<double>::infinity();
  double w = 0.0;
  std::vector<double> below_witnesses;  // refined minima of runs under the threshold
};

// Samples f at {0} and the grid (skipping poles), refines every local minimum
// and reports the minima of the runs where f < threshold.
ScanMinimum scan_minimum(const std::function<double(double)>& f, const GridSpec& grid, double threshold) {
  std::vector<double> ws{0.0};
  for (double w : grid.samples()) ws.push_back(w);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> vals(ws.size(), nan);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    try {
      vals[i] = f(ws[i]);
    } catch (const PoleError&) {
    }
  }
  auto safe = [&](double w) {
    try {
      return f(w);
    } catch (const PoleError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  ScanMinimum out;
  std::vector<std::pair<double, double>> refined(ws.size(), {nan, nan});
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (std::isnan(vals[i])) continue;
    const bool left_ok = i == 0 || std::isnan(vals[i - 1]) || vals[i] <= vals[i - 1];
    const bool right_ok = i + 1 == ws.size() || std::isnan(vals[i + 1]) || vals[i] <= vals[i + 1];
    std::pair<double, double> best{ws[i], vals[i]};
    if (left_ok && right_ok) {
      const double a = i == 0 ? ws[0] : ws[i - 1];
      const double b = i + 1 == ws.size() ? ws[i] : ws[i + 1];
      if (b > a) {
        const auto m = golden_min(safe, a, b);
        if (m.second < best.second) best = m;
      }
    }
    refined[i] = best;
    if (best.second < out.value) {
      out.value = best.second;
      out.w = best.first;
    }
  }

  // One witness per run of samples under the threshold.
  std::size_t i = 0;
  while (i < ws.size()) {
    if (std::isnan(refined[i].second) || refined[i].second >= threshold) {
      ++i;
      continue;
    }
    std::pair<double, double> worst = refined[i];
    std::size_t j = i;
    while (j < ws.size() && !std::isnan(refined[j].second) && refined[j].second < threshold) {
      if (refined[j].second < worst.second) worst = refined[j];
      ++j;
    }
    out.below_witnesses.push_back(worst.first);
    i = j;
  }
  return out;
}

}  // namespace

OracleResult oracle_of_passivity(const RationalFunction& g, double sigma, const GridSpec& grid,
                                 const ToleranceConfig& tol) {
  const RationalFunction h = sigma == 0.0 ? g : of_transform(g, sigma);
  OracleResult out;
  out.stable = true;
  if (h.den().degree() >= 1) {
    const std::vector<Complex> rs = roots(h.den());
    double scale = 1.0;
    for (const Complex& r : rs) scale = std::max(scale, 1.0 + std::abs(r));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const Complex r = rs[i];
      if (r.real() > tol.stability * scale) {
        out.stable = false;
        continue;
      }
      if (std::abs(r.real()) > tol.stability * scale) continue;
      for (std::size_t j = 0; j < rs.size(); ++j) {
        if (j != i && std::abs(rs[j] - r) <= 1e-6 * scale) out.stable = false;
      }
      // Residue estimated as the limit of (s - s0) H(s) from the right.
      const double step = 1e-7 * (1.0 + std::abs(r));
      const Complex s0(0.0, r.imag());
      const Complex est = step * h.eval(s0 + step, tol);
      if (est.real() < -1e-6 * (1.0 + std::abs(est)) || std::abs(est.imag()) > 1e-6 * (1.0 + std::abs(est))) {
        out.stable = false;
      }
    }
  }

  GridSpec dense = grid;
  dense.points_per_decade = 2 * grid.points_per_decade;
  std::vector<double> ws{0.0};
  for (double w : dense.samples()) ws.push_back(w);
  out.min_real_part = std::numeric_limits<double>::infinity();
  for (double w : ws) {
    try {
      const double re = h.freq(w, tol).real();
      if (re < out.min_real_part) {
        out.min_real_part = re;
        out.argmin_frequency = w;
      }
    } catch (const PoleError&) {
    }
  }
  return out;
}

PassivityReport of_passivity_check(const RationalFunction& g, double sigma, const GridSpec& grid,
                                   const ToleranceConfig& tol) {
  if (!g.is_proper()) throw DomainError("passivity check needs a proper transfer function");
  PassivityReport rep;
  rep.sigma = sigma;
  const Classification cls = classify(g, tol);
  rep.unstable_poles = cls.unstable_pole_count;
  rep.tangent_at_infinity = g.is_strictly_proper();
  rep.notes = cls.warnings;

  const PDRegion region = pd_region(PassivityIndex(sigma), FeedbackMode::output_feedback);
  const double scale = tol.region * (1.0 + std::abs(region.center) + region.radius);
  const ScanMinimum contain =
      scan_minimum([&](double w) { return region_depth(region, g.freq(w, tol)); }, grid, -scale);
  rep.min_containment_margin = contain.value;
  rep.min_margin_frequency = contain.w;
  rep.containment_violations = contain.below_witnesses;
  rep.strict_finite_range = contain.value > tol.strict_margin;

  bool residues_ok = true;
  bool winding_ok = true;
  bool inconclusive = false;

  if (sigma == 0.0) {
    rep.notes.push_back("sigma = 0: passivity of G itself (no forbidden point)");
    rep.axis_pole_residues = axis_residues(g, tol);
    winding_ok = cls.unstable_pole_count == 0;
  } else {
    const Complex point = 1.0 / sigma;
    try {
      rep.winding_number = cls.imaginary_axis_poles.empty() ? winding_number(g, point, grid, tol)
                                                            : detoured_winding(g, point, grid, tol);
      winding_ok = *rep.winding_number == cls.unstable_pole_count;
    } catch (const Error& e) {
      rep.notes.push_back(std::string("winding number unavailable: ") + e.what());
      inconclusive = true;
    }

    const ScanMinimum forbidden = scan_minimum([&](double w) { return std::abs(g.freq(w, tol) - point); }, grid,
                                               -std::numeric_limits<double>::infinity());
    rep.forbidden_point_distance = forbidden.value;
    rep.forbidden_point_hit = forbidden.value <= tol.forbidden_point * (1.0 + std::abs(point));
    if (rep.forbidden_point_hit) inconclusive = true;

    rep.axis_pole_residues = axis_residues(of_transform(g, sigma), tol);
  }
  for (const AxisResidue& r : rep.axis_pole_residues) residues_ok = residues_ok && r.ok;

  if (!rep.containment_violations.empty() || !winding_ok || !residues_ok) {
    rep.verdict = PassivityVerdict::not_passive;
  } else if (inconclusive) {
    rep.verdict = PassivityVerdict::inconclusive;
  } else {
    rep.verdict = PassivityVerdict::passive;
  }
  rep.oracle_verdict = oracle_of_passivity(g, sigma, grid, tol);
  return rep;
}

std::string to_string(PassivityVerdict v) {
  switch (v) {
    case PassivityVerdict::passive:
      return "passive";
    case PassivityVerdict::not_passive:
      return "not_passive";
    case PassivityVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

}  // namespace pdregion
