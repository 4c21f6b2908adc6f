#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdregion/grid.hpp"
#include "pdregion/pdcore.hpp"
#include "pdregion/rational.hpp"

namespace pdregion {

enum class BandMode { siso_exact, mimo_exact, mimo_estimated, if_mode };

/// How an edge frequency was obtained.
///   refined       bisection on the margin between a holding and a failing sample
///   grid_limited  the holding sample next to a failing or skipped one
///   sample        w = 0, or a sample that holds only within tolerance
///   scan_limit    the last grid sample (the band may continue beyond it)
enum class EdgeProvenance { refined, grid_limited, sample, scan_limit };

struct BandEdge {
  double w = 0.0;
  EdgeProvenance provenance = EdgeProvenance::sample;
  double margin = 0.0;
};

struct BandInterval {
  BandEdge lo;
  BandEdge hi;
};

/// Ordered disjoint closed intervals of [0, inf).
struct FrequencyBand {
  std::vector<BandInterval> intervals;
  GridSpec grid;
  bool refined = false;
  std::vector<double> skipped;           // samples at poles
  std::vector<double> singular_samples;  // 1 - sigma G = 0: kept as boundary points

  bool empty() const { return intervals.empty(); }
  /// Closed membership with relative edge slack.
  bool contains(double w, double rel_tol = 1e-9) const;
};

/// holds <=> margin >= -tolerance. A holding sample with margin <= tolerance
/// sits on the boundary and is never refined past.
struct MarginSample {
  bool holds = false;
  double margin = 0.0;
  double tolerance = 0.0;
  bool singular = false;
};

/// Margin at w; may throw PoleError or SingularFeedbackError, which mark the
/// sample as skipped. Scalar margins report a singular loop as a holding
/// sample with zero margin instead: G = 1/sigma lies on the region boundary.
using MarginFn = std::function<MarginSample(double)>;

/// Scans {0} and the grid samples, groups holding samples into intervals and,
/// when `refine` is set, bisects each hold/fail transition on the margin sign
/// until |dw| <= tol.band_edge * w. Throws DomainError when every sample is
/// skipped.
FrequencyBand scan_band(const MarginFn& margin, const GridSpec& grid, bool refine,
                        const ToleranceConfig& tol = default_tolerances());

/// Margin function of the check selected by `mode`. siso_exact needs a 1x1
/// system and a scalar index.
MarginFn band_margin(const RationalMatrix& g, const PassivityIndex& sigma, BandMode mode,
                     const ToleranceConfig& tol = default_tolerances());

/// Refinement is skipped for mimo_estimated, whose margin need not be smooth.
FrequencyBand pd_band(const RationalMatrix& g, const PassivityIndex& sigma, const GridSpec& grid, BandMode mode,
                      const ToleranceConfig& tol = default_tolerances());

struct ContractionResult {
  bool contained = false;
  std::optional<double> witness;  // in band(sigma2) but not in band(sigma1)
  FrequencyBand band1;
  FrequencyBand band2;
};

/// Checks band(sigma2) within band(sigma1) using siso_exact for scalar
/// systems and mimo_exact otherwise. Throws DomainError unless
/// sigma2 - sigma1 is positive definite.
ContractionResult contraction_check(const RationalMatrix& g, const PassivityIndex& sigma1,
                                    const PassivityIndex& sigma2, const GridSpec& grid,
                                    const ToleranceConfig& tol = default_tolerances());

/// Smallest w = 10^(k * decade_step) in [w_min, w_max] at which the scalar
/// check fails. Poles and singular-loop points are skipped. Throws
/// DomainError if nothing fails.
double first_failing_grid_point(const RationalFunction& g, double sigma, double decade_step, double w_min = 1e-3,
                                double w_max = 1e3, const ToleranceConfig& tol = default_tolerances());

/// Critical frequency under the grid-point convention: 0 when the band is
/// empty or starts with the degenerate interval [0, 0], otherwise the first
/// failing grid point.
double critical_grid_frequency(const RationalFunction& g, double sigma, const FrequencyBand& band,
                               double decade_step, const ToleranceConfig& tol = default_tolerances());

std::string to_string(BandMode m);
std::string to_string(EdgeProvenance p);

}  // namespace pdregion
