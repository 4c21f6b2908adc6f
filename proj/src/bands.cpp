#include "pdregion/bands.hpp"

#include <algorithm>
#include <cmath>

#include "pdregion/error.hpp"
#include "pdregion/parallel.hpp"

namespace pdregion {

bool FrequencyBand::contains(double w, double rel_tol) const {
  return std::any_of(intervals.begin(), intervals.end(), [&](const BandInterval& iv) {
    return w >= iv.lo.w - rel_tol * iv.lo.w && w <= iv.hi.w + rel_tol * iv.hi.w;
  });
}

namespace {

enum class Status { hold, fail, skip };

struct Sample {
  Status status = Status::skip;
  MarginSample m;
};

Sample evaluate(const MarginFn& fn, double w) {
  Sample s;
  try {
    s.m = fn(w);
    s.status = s.m.holds ? Status::hold : Status::fail;
  } catch (const PoleError&) {
    s.status = Status::skip;
  } catch (const SingularFeedbackError&) {
    s.status = Status::skip;
  }
  return s;
}

// Edge between a holding sample and a failing one. The returned frequency
// always holds; the transition lies within tol.band_edge * w of it.
BandEdge bisect_edge(const MarginFn& fn, double w_hold, const MarginSample& m_hold, double w_fail,
                     const ToleranceConfig& tol) {
  if (m_hold.margin <= m_hold.tolerance) return {w_hold, EdgeProvenance::sample, m_hold.margin};
  double hold = w_hold;
  double fail = w_fail;
  double hold_margin = m_hold.margin;
  for (int it = 0; it < 200; ++it) {
    if (std::abs(hold - fail) <= tol.band_edge * std::max(std::abs(hold), std::abs(fail))) break;
    const double mid = 0.5 * (hold + fail);
    const Sample s = evaluate(fn, mid);
    if (s.status != Status::skip && s.m.margin > 0.0) {
      hold = mid;
      hold_margin = s.m.margin;
    } else {
      fail = mid;
    }
  }
  return {hold, EdgeProvenance::refined, hold_margin};
}

}  // namespace

FrequencyBand scan_band(const MarginFn& margin, const GridSpec& grid, bool refine, const ToleranceConfig& tol) {
  std::vector<double> ws = grid.samples();
  if (ws.front() > 0.0) ws.insert(ws.begin(), 0.0);
  const std::vector<Sample> samples =
      parallel_map<Sample>(ws.size(), [&](std::size_t i) { return evaluate(margin, ws[i]); });

  FrequencyBand band;
  band.grid = grid;
  band.refined = refine;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (samples[i].status == Status::skip) band.skipped.push_back(ws[i]);
    if (samples[i].status != Status::skip && samples[i].m.singular) band.singular_samples.push_back(ws[i]);
  }
  if (band.skipped.size() == ws.size()) throw DomainError("every grid sample is a pole or a singular point");

  std::optional<BandEdge> open;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const Sample& s = samples[i];
    if (s.status == Status::hold) {
      if (open) continue;
      if (i == 0) {
        open = BandEdge{ws[0], EdgeProvenance::sample, s.m.margin};
      } else if (refine && samples[i - 1].status == Status::fail) {
        open = bisect_edge(margin, ws[i], s.m, ws[i - 1], tol);
      } else {
        open = BandEdge{ws[i], EdgeProvenance::grid_limited, s.m.margin};
      }
      continue;
    }
    if (!open) continue;
    const Sample& prev = samples[i - 1];
    BandEdge hi;
    if (refine && s.status == Status::fail) {
      hi = bisect_edge(margin, ws[i - 1], prev.m, ws[i], tol);
    } else {
      hi = BandEdge{ws[i - 1], EdgeProvenance::grid_limited, prev.m.margin};
    }
    band.intervals.push_back({*open, hi});
    open.reset();
  }
  if (open) band.intervals.push_back({*open, BandEdge{ws.back(), EdgeProvenance::scan_limit, samples.back().m.margin}});
  return band;
}

MarginFn band_margin(const RationalMatrix& g, const PassivityIndex& sigma, BandMode mode,
                     const ToleranceConfig& tol) {
  switch (mode) {
    case BandMode::siso_exact: {
      if (!g.is_scalar()) throw DomainError("siso band mode needs a 1x1 system");
      const RationalFunction f = g(0, 0);
      const double s = sigma.scalar();
      return [f, s, tol](double w) {
        try {
          const SisoCheck c = pd_check_siso(f, s, w, tol);
          return MarginSample{c.holds, c.margin, c.tolerance, false};
        } catch (const SingularFeedbackError&) {
          return MarginSample{true, 0.0, tol.pd_margin, true};
        }
      };
    }
    case BandMode::mimo_exact:
      sigma.expanded(g.size());
      return [g, sigma, tol](double w) {
        const MimoExactCheck c = pd_check_mimo_exact(g, sigma, w, tol);
        return MarginSample{c.holds, c.lambda_min_value, c.tolerance};
      };
    case BandMode::mimo_estimated:
      sigma.expanded(g.size());
      return [g, sigma, tol](double w) {
        const MimoNecessaryCheck c = pd_check_mimo_necessary(g, sigma, w, 720, tol);
        // The region is closed: a boundary straddle counts as holding.
        return MarginSample{c.verdict != Verdict::fails, c.slack, c.tolerance};
      };
    case BandMode::if_mode:
      sigma.expanded(g.size());
      return [g, sigma, tol](double w) {
        const IfCheck c = pd_check_if(g, sigma, w, tol);
        return MarginSample{c.holds, c.lambda_min_value, c.tolerance};
      };
  }
  throw DomainError("unknown band mode");
}

FrequencyBand pd_band(const RationalMatrix& g, const PassivityIndex& sigma, const GridSpec& grid, BandMode mode,
                      const ToleranceConfig& tol) {
  return scan_band(band_margin(g, sigma, mode, tol), grid, mode != BandMode::mimo_estimated, tol);
}

namespace {

bool leq_rel(double a, double b) { return a <= b + 1e-9 * std::max(std::abs(a), std::abs(b)); }

bool interval_inside(const BandInterval& inner, const FrequencyBand& outer) {
  return std::any_of(outer.intervals.begin(), outer.intervals.end(), [&](const BandInterval& o) {
    return leq_rel(o.lo.w, inner.lo.w) && leq_rel(inner.hi.w, o.hi.w);
  });
}

}  // namespace

ContractionResult contraction_check(const RationalMatrix& g, const PassivityIndex& sigma1,
                                    const PassivityIndex& sigma2, const GridSpec& grid, const ToleranceConfig& tol) {
  const RealMatrix diff = sigma2.expanded(g.size()) - sigma1.expanded(g.size());
  const double gap = diff.rows() == 1 ? diff(0, 0) : lambda_min(HermitianMatrix(diff));
  if (!(gap > 0.0)) throw DomainError("contraction check needs sigma2 - sigma1 positive definite");

  const BandMode mode = g.is_scalar() ? BandMode::siso_exact : BandMode::mimo_exact;
  const PassivityIndex s1 = g.is_scalar() ? PassivityIndex(sigma1.expanded(1)) : sigma1;
  const PassivityIndex s2 = g.is_scalar() ? PassivityIndex(sigma2.expanded(1)) : sigma2;
  ContractionResult out;
  out.band1 = pd_band(g, s1, grid, mode, tol);
  out.band2 = pd_band(g, s2, grid, mode, tol);
  out.contained = true;
  for (const BandInterval& iv : out.band2.intervals) {
    if (interval_inside(iv, out.band1)) continue;
    out.contained = false;
    for (double w : {iv.lo.w, 0.5 * (iv.lo.w + iv.hi.w), iv.hi.w}) {
      if (!out.band1.contains(w)) {
        out.witness = w;
        break;
      }
    }
    if (!out.witness) out.witness = iv.lo.w;
    break;
  }
  return out;
}

double first_failing_grid_point(const RationalFunction& g, double sigma, double decade_step, double w_min,
                                double w_max, const ToleranceConfig& tol) {
  if (!(decade_step > 0.0)) throw DomainError("decade step must be positive");
  if (!(w_min > 0.0 && w_max > w_min)) throw DomainError("scan range needs 0 < w_min < w_max");
  const auto k_lo = static_cast<long>(std::ceil(std::log10(w_min) / decade_step - 1e-9));
  const auto k_hi = static_cast<long>(std::floor(std::log10(w_max) / decade_step + 1e-9));
  for (long k = k_lo; k <= k_hi; ++k) {
    const double w = std::pow(10.0, static_cast<double>(k) * decade_step);
    try {
      if (!pd_check_siso(g, sigma, w, tol).holds) return w;
    } catch (const PoleError&) {
    } catch (const SingularFeedbackError&) {
      // boundary point, counted as holding
    }
  }
  throw DomainError("the scalar check holds at every grid point of the scan range");
}

double critical_grid_frequency(const RationalFunction& g, double sigma, const FrequencyBand& band,
                               double decade_step, const ToleranceConfig& tol) {
  if (band.empty()) return 0.0;
  const BandInterval& first = band.intervals.front();
  if (first.lo.w == 0.0 && first.hi.w == 0.0) return 0.0;
  return first_failing_grid_point(g, sigma, decade_step, band.grid.w_min, band.grid.w_max, tol);
}

std::string to_string(BandMode m) {
  switch (m) {
    case BandMode::siso_exact:
      return "siso_exact";
    case BandMode::mimo_exact:
      return "mimo_exact";
    case BandMode::mimo_estimated:
      return "mimo_estimated";
    case BandMode::if_mode:
      return "if";
  }
  return "unknown";
}

std::string to_string(EdgeProvenance p) {
  switch (p) {
    case EdgeProvenance::refined:
      return "refined";
    case EdgeProvenance::grid_limited:
      return "grid_limited";
    case EdgeProvenance::sample:
      return "sample";
    case EdgeProvenance::scan_limit:
      return "scan_limit";
  }
  return "unknown";
}

}  // namespace pdregion
