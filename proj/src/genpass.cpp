#include "pdregion/genpass.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "pdregion/error.hpp"

namespace pdregion {

RationalFunction derivative_output_system(const RationalFunction& g) { return RationalFunction({0.0, 1.0}, {1.0}) * g; }

SisoCheck gen_pd_value(Complex g, Complex r, double sigma, const ToleranceConfig& tol) {
  if (std::abs(1.0 - sigma * g) <= tol.singular_feedback) {
    throw SingularFeedbackError("1 - sigma G vanishes: the feedback loop is not well defined");
  }
  const double mag2 = std::norm(g);
  SisoCheck out;
  out.margin = r.real() * g.real() - r.imag() * g.imag() - sigma * mag2 * r.real();
  out.tolerance = tol.pd_margin * (1.0 + std::abs(r) * std::abs(g) + std::abs(sigma) * mag2 * std::abs(r.real()));
  out.holds = out.margin >= -out.tolerance;
  return out;
}

namespace {

Complex operator_value(const ROperator& r, double w, const ToleranceConfig& tol) {
  const Complex v = r.R.freq(w, tol);
  if (!(std::abs(v) < 1e12)) throw DomainError("|R(jw)| exceeds 1e12 at w = " + std::to_string(w));
  return v;
}

}  // namespace

SisoCheck gen_pd_check(const RationalFunction& g, double sigma, const ROperator& r, double w,
                       const ToleranceConfig& tol) {
  return gen_pd_value(g.freq(w, tol), operator_value(r, w, tol), sigma, tol);
}

GeneralizedPDSample gen_pd_sample(const RationalFunction& g, double sigma, const ROperator& r, double w,
                                  const ToleranceConfig& tol) {
  const Complex gv = g.freq(w, tol);
  const Complex rv = operator_value(r, w, tol);
  GeneralizedPDSample s;
  s.w = w;
  s.re_g = gv.real();
  s.im_g = gv.imag();
  try {
    const SisoCheck c = gen_pd_value(gv, rv, sigma, tol);
    s.holds = c.holds;
    s.margin = c.margin;
  } catch (const SingularFeedbackError&) {
    s.holds = true;  // G = 1/sigma sits on the region boundary
    s.margin = 0.0;
  }
  return s;
}

FrequencyBand gen_pd_band(const RationalFunction& g, double sigma, const ROperator& r, const GridSpec& grid,
                          const ToleranceConfig& tol) {
  const MarginFn fn = [g, sigma, r, tol](double w) {
    const Complex gv = g.freq(w, tol);
    const Complex rv = operator_value(r, w, tol);
    try {
      const SisoCheck c = gen_pd_value(gv, rv, sigma, tol);
      return MarginSample{c.holds, c.margin, c.tolerance, false};
    } catch (const SingularFeedbackError&) {
      return MarginSample{true, 0.0, tol.pd_margin, true};
    }
  };
  return scan_band(fn, grid, true, tol);
}

PassivityReport gen_full_passivity(const RationalFunction& g, double sigma, const ROperator& r, const GridSpec& grid,
                                   const ToleranceConfig& tol) {
  if (r.kind != RKind::differentiator) throw DomainError("full generalized passivity is defined for R = s only");
  if (sigma == 0.0) throw DomainError("full generalized passivity needs sigma != 0");
  if (!g.is_strictly_proper()) throw DomainError("full generalized passivity needs a strictly proper G");

  PassivityReport rep;
  rep.sigma = sigma;
  const Classification cls = classify(g, tol);
  rep.unstable_poles = cls.unstable_pole_count;
  rep.tangent_at_infinity = true;
  rep.notes = cls.warnings;

  // Condition (15) on {0} and the grid; one witness per failing run.
  std::vector<double> ws{0.0};
  for (double w : grid.samples()) ws.push_back(w);
  rep.min_containment_margin = std::numeric_limits<double>::infinity();
  bool in_run = false;
  double run_worst = 0.0;
  double run_w = 0.0;
  for (double w : ws) {
    GeneralizedPDSample s;
    try {
      s = gen_pd_sample(g, sigma, r, w, tol);
    } catch (const PoleError&) {
      continue;
    }
    if (s.margin < rep.min_containment_margin) {
      rep.min_containment_margin = s.margin;
      rep.min_margin_frequency = w;
    }
    if (!s.holds) {
      if (!in_run || s.margin < run_worst) {
        run_worst = s.margin;
        run_w = w;
      }
      in_run = true;
    } else if (in_run) {
      rep.containment_violations.push_back(run_w);
      in_run = false;
    }
  }
  if (in_run) rep.containment_violations.push_back(run_w);
  rep.strict_finite_range = rep.min_containment_margin > tol.strict_margin;

  bool inconclusive = false;
  bool winding_ok = true;
  const Complex point = 1.0 / sigma;
  try {
    rep.winding_number = cls.imaginary_axis_poles.empty() ? winding_number(g, point, grid, tol)
                                                          : detoured_winding(g, point, grid, tol);
    winding_ok = *rep.winding_number == cls.unstable_pole_count;
  } catch (const Error& e) {
    rep.notes.push_back(std::string("winding number unavailable: ") + e.what());
    inconclusive = true;
  }

  double nearest = std::numeric_limits<double>::infinity();
  for (double w : ws) {
    try {
      nearest = std::min(nearest, std::abs(g.freq(w, tol) - point));
    } catch (const PoleError&) {
    }
  }
  rep.forbidden_point_distance = nearest;
  rep.forbidden_point_hit = nearest <= tol.forbidden_point * (1.0 + std::abs(point));
  if (rep.forbidden_point_hit) inconclusive = true;

  const RationalFunction hd = r.R * of_transform(g, sigma);
  rep.axis_pole_residues = axis_residues(hd, tol);
  bool residues_ok = true;
  for (const AxisResidue& a : rep.axis_pole_residues) residues_ok = residues_ok && a.ok;

  OracleResult oracle = oracle_of_passivity(g, sigma, grid, tol);
  oracle.min_real_part = std::numeric_limits<double>::infinity();
  for (double w : ws) {
    try {
      const double re = hd.freq(w, tol).real();
      if (re < oracle.min_real_part) {
        oracle.min_real_part = re;
        oracle.argmin_frequency = w;
      }
    } catch (const PoleError&) {
    }
  }
  rep.oracle_verdict = oracle;

  if (!rep.containment_violations.empty() || !winding_ok || !residues_ok) {
    rep.verdict = PassivityVerdict::not_passive;
  } else if (inconclusive) {
    rep.verdict = PassivityVerdict::inconclusive;
  } else {
    rep.verdict = PassivityVerdict::passive;
  }
  return rep;
}

RegionSlice region_slice(double sigma, Complex r_value, double w) {
  RegionSlice s;
  s.w = w;
  const double a = r_value.real();
  const double b = r_value.imag();
  if (sigma * a != 0.0) {
    s.kind = sigma * a > 0.0 ? SliceKind::disk : SliceKind::disk_complement;
    s.center = Complex(1.0 / (2.0 * sigma), -b / (2.0 * sigma * a));
    s.radius = std::sqrt(1.0 / (4.0 * sigma * sigma) + b * b / (4.0 * sigma * sigma * a * a));
  } else if (a != 0.0 || b != 0.0) {
    s.kind = SliceKind::half_plane;
    s.normal = std::conj(r_value);
  }
  return s;
}

RegionSlice derivative_output_slice(double sigma, double w) {
  RegionSlice s;
  s.w = w;
  if (sigma == 0.0 || w == 0.0) {
    // Re(jw G) >= 0 degenerates to -w Im G >= 0.
    if (w != 0.0) {
      s.kind = SliceKind::half_plane;
      s.normal = Complex(0.0, -w);
    }
    return s;
  }
  s.kind = sigma * w > 0.0 ? SliceKind::disk : SliceKind::disk_complement;
  s.center = Complex(0.0, -1.0 / (2.0 * sigma * w));
  s.radius = std::abs(1.0 / (2.0 * sigma * w));
  return s;
}

std::string describe(const RegionSlice& s, int precision) {
  char buf[160];
  switch (s.kind) {
    case SliceKind::disk:
    case SliceKind::disk_complement:
      std::snprintf(buf, sizeof buf, "%s(cx=%.*g;cy=%.*g;r=%.*g)", s.kind == SliceKind::disk ? "disk" : "outside_disk",
                    precision, s.center.real(), precision, s.center.imag(), precision, s.radius);
      return buf;
    case SliceKind::half_plane:
      std::snprintf(buf, sizeof buf, "half_plane(%.*g*re%+.*g*im>=0)", precision, s.normal.real(), precision,
                    s.normal.imag());
      return buf;
    case SliceKind::whole_plane:
      break;
  }
  return "whole_plane";
}

std::string slice_csv(const std::vector<GeneralizedPDSample>& samples, const std::vector<RegionSlice>& slices,
                      int precision) {
  if (samples.size() != slices.size()) throw DomainError("slice_csv: samples and slices differ in length");
  std::string out = "w,re_g,im_g,holds,margin,boundary\n";
  char buf[256];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const GeneralizedPDSample& s = samples[i];
    std::snprintf(buf, sizeof buf, "%.*g,%.*g,%.*g,%d,%.*g,", precision, s.w, precision, s.re_g, precision, s.im_g,
                  s.holds ? 1 : 0, precision, s.margin);
    out += buf;
    out += describe(slices[i], precision);
    out += '\n';
  }
  return out;
}

}  // namespace pdregion
