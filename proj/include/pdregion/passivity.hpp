#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdregion/grid.hpp"
#include "pdregion/rational.hpp"
#include "pdregion/tolerance.hpp"

namespace pdregion {

// Winding numbers count counter-clockwise turns of G(s) - point while s runs
// up the imaginary axis from -j inf to +j inf and closes through the right
// half-plane at infinity. With this orientation the count equals
// (unstable poles of G) - (unstable zeros of G - point).

/// Plain contour; G must be proper without imaginary-axis poles. A real point
/// uses conjugate symmetry (half range, doubled). Throws DomainError when the
/// curve passes within tol.forbidden_point of the point and ConvergenceError
/// when the accumulated angle is not within tol.winding_residual of an integer.
int winding_number(const RationalFunction& g, Complex point, const GridSpec& grid = {},
                   const ToleranceConfig& tol = default_tolerances());

/// Same count accumulated over the whole axis without symmetry.
int winding_number_full(const RationalFunction& g, Complex point, const GridSpec& grid = {},
                        const ToleranceConfig& tol = default_tolerances());

/// Contour indented into the right half-plane by semicircles of radius
/// 1e-6 * (1 + |pole|) around each imaginary-axis pole. Throws DomainError for
/// a repeated axis pole.
int detoured_winding(const RationalFunction& g, Complex point, const GridSpec& grid = {},
                     const ToleranceConfig& tol = default_tolerances());

/// Upper end of the scanned axis: at least grid.w_max and 1e3 (1 + max|pole|),
/// extended until the tail stays within half the distance from G(inf) to point.
double contour_extent(const RationalFunction& g, Complex point, const GridSpec& grid);

struct AxisResidue {
  double frequency = 0.0;
  Complex residue;
  bool simple = true;
  bool ok = false;
};

/// Residues of h at its imaginary-axis poles (one entry per distinct pole,
/// ascending frequency). A repeated pole gets simple = false, ok = false.
std::vector<AxisResidue> axis_residues(const RationalFunction& h, const ToleranceConfig& tol = default_tolerances());

enum class PassivityVerdict { passive, not_passive, inconclusive };

struct OracleResult {
  bool stable = false;
  double min_real_part = 0.0;
  double argmin_frequency = 0.0;
};

struct PassivityReport {
  PassivityVerdict verdict = PassivityVerdict::inconclusive;
  double sigma = 0.0;
  std::optional<int> winding_number;  // absent for sigma = 0 or when not computable
  int unstable_poles = 0;
  std::vector<double> containment_violations;
  double min_containment_margin = 0.0;  // signed distance to the region boundary
  double min_margin_frequency = 0.0;
  bool forbidden_point_hit = false;
  double forbidden_point_distance = 0.0;
  std::vector<AxisResidue> axis_pole_residues;
  bool strict_finite_range = false;  // min_containment_margin > tol.strict_margin
  bool tangent_at_infinity = false;  // G strictly proper: the locus ends on the boundary
  std::optional<OracleResult> oracle_verdict;
  std::vector<std::string> notes;
};

/// Full output-feedback passivity verdict on a strictly proper scalar G:
/// winding about 1/sigma against the unstable pole count, containment in the
/// PD region on the grid (refined around local minima), distance to the
/// forbidden point 1/sigma and axis residues of G / (1 - sigma G). sigma = 0
/// checks plain passivity of G. The oracle is attached to the report.
PassivityReport of_passivity_check(const RationalFunction& g, double sigma, const GridSpec& grid = {},
                                   const ToleranceConfig& tol = default_tolerances());

/// Brute force: roots of D - sigma N (axis roots simple with a nonnegative
/// residue) and min Re H(jw) over a grid twice as dense as `grid`.
OracleResult oracle_of_passivity(const RationalFunction& g, double sigma, const GridSpec& grid = {},
                                 const ToleranceConfig& tol = default_tolerances());

std::string to_string(PassivityVerdict v);

}  // namespace pdregion
