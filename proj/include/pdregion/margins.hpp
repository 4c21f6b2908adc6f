#pragma once

#include <optional>

#include "pdregion/grid.hpp"
#include "pdregion/rational.hpp"
#include "pdregion/tolerance.hpp"

namespace pdregion {

struct RobustnessResult {
  double d_min = 0.0;  // min over [w_min, w_max] of r - |G0(jw) - c|; negative when outside
  double argmin_frequency = 0.0;
  bool tangent_at_infinity = false;
  double w_min = 0.0;
  double w_max = 0.0;
};

/// Distance from the sampled locus to the boundary of the disk with
/// c = r = 1/(2 sigma) over the grid range, refined by golden-section search
/// in log w. Throws DomainError for sigma <= 0 and PoleError at poles.
RobustnessResult robustness_distance(const RationalFunction& g0, double sigma, const GridSpec& grid = {},
                                     const ToleranceConfig& tol = default_tolerances());

/// delta_norm < d_min (strict).
bool check_perturbation(const RationalFunction& g0, double sigma, double delta_norm, const GridSpec& grid = {},
                        const ToleranceConfig& tol = default_tolerances());

/// Re(1/G(jw)), evaluated as Re(D(jw) / N(jw)). Throws DomainError at a zero
/// of G on the axis.
double varsigma(const RationalFunction& g, double w);

struct QuadSpec {
  int initial_panels = 8;
  int max_panels = 1 << 16;
  double tolerance = 1e-8;  // successive estimates must differ by less
};

struct WaterbedResult {
  double lhs = 0.0;  // 1/G(a) - L(a)
  double rhs_quadrature = 0.0;
  double abs_error = 0.0;
  double a = 0.0;
  int relative_degree = 0;
  int panels = 0;
};

/// Poisson conservation check for a strictly proper minimum-phase G:
/// 1/G(a) - L(a) against (1/pi) * integral of [Re(1/G(jw)) - Re L(jw)] a/(w^2 + a^2)
/// with L the polynomial part of 1/G without constant term. The integral is
/// taken in phi = atan(w / a), where the kernel becomes d phi. Throws
/// DomainError on bad preconditions and ConvergenceError when panel doubling
/// does not settle.
WaterbedResult waterbed_identity(const RationalFunction& g, double a, const QuadSpec& quad = {},
                                 const ToleranceConfig& tol = default_tolerances());

struct WaterbedBound {
  double lhs = 0.0;             // 1/G(a) - l1 a
  double bound = 0.0;           // (2 sigma / pi) atan(w_c / a)
  double printed_bound = 0.0;   // (sigma / pi) atan(w_c / a)
  bool satisfied = false;       // lhs >= bound
  double min_varsigma_low = 0.0;  // min of Re(1/G) over [0, w_c]
};

/// Trade-off between the damping level sigma held up to w_c and 1/G(a).
/// Needs relative degree 1 and a > 0. Throws DomainError with a witness
/// frequency when Re(1/G) < sigma somewhere on [0, w_c] or Re(1/G) < 0 on
/// (w_c, grid.w_max].
WaterbedBound waterbed_bound(const RationalFunction& g, double sigma, double w_c, double a, const GridSpec& grid = {},
                             const ToleranceConfig& tol = default_tolerances());

}  // namespace pdregion
