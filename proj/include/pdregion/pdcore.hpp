#pragma once

#include <functional>
#include <optional>

#include "pdregion/hermitian.hpp"
#include "pdregion/rational.hpp"
#include "pdregion/tolerance.hpp"

namespace pdregion {

/// Real symmetric passivity index. A 1x1 index acts as sigma * I on p x p
/// systems.
class PassivityIndex {
 public:
  PassivityIndex(double sigma);
  /// Throws DomainError if `m` is not square or not symmetric within `tol`.
  explicit PassivityIndex(const RealMatrix& m, double tol = default_tolerances().hermitian_symmetry);

  const RealMatrix& matrix() const { return m_; }
  double lambda_min() const { return lambda_min_; }
  std::size_t size() const { return static_cast<std::size_t>(m_.rows()); }
  bool is_scalar() const { return m_.rows() == 1; }
  /// The scalar value; throws DomainError for a matrix index.
  double scalar() const;
  /// The index as a p x p matrix. Throws DomainError on a size mismatch.
  RealMatrix expanded(std::size_t p) const;

 private:
  RealMatrix m_;
  double lambda_min_ = 0.0;
};

enum class FeedbackMode { output_feedback, input_feedforward };

enum class RegionKind { of_disk, of_disk_complement, half_plane_re_nonneg, if_half_plane, generalized };

/// Admissible set for G(jw) (SISO) or for the Rayleigh quotients of G(jw).
///   of_disk              |z - center| <= radius, center = radius > 0
///   of_disk_complement   |z - center| >= radius, center = -radius < 0
///   half_plane_re_nonneg Re z >= 0
///   if_half_plane        Re z >= shift
///   generalized          frequency_parametric(z, w)
struct PDRegion {
  RegionKind kind = RegionKind::half_plane_re_nonneg;
  Complex center{0.0, 0.0};
  double radius = 0.0;
  double shift = 0.0;
  std::function<bool(Complex, double)> frequency_parametric;
};

/// Region for sigma_eff = lambda_min(sigma).
PDRegion pd_region(const PassivityIndex& sigma, FeedbackMode mode);

/// Closed membership with slack tol * (1 + |center| + radius). Throws
/// DomainError for generalized regions.
bool region_contains(const PDRegion& r, Complex z, double tol = default_tolerances().region);

/// Signed distance from z to the region boundary, positive inside. Throws
/// DomainError for generalized regions.
double region_depth(const PDRegion& r, Complex z);

struct SisoCheck {
  bool holds = false;
  double margin = 0.0;     // Re G - sigma |G|^2
  double tolerance = 0.0;  // holds <=> margin >= -tolerance
};

/// Scalar check on a frequency-response value. Throws SingularFeedbackError
/// when |1 - sigma g| <= tol.singular_feedback.
SisoCheck pd_check_value(Complex g, double sigma, const ToleranceConfig& tol = default_tolerances());
/// Throws PoleError at a pole and SingularFeedbackError as above.
SisoCheck pd_check_siso(const RationalFunction& g, double sigma, double w,
                        const ToleranceConfig& tol = default_tolerances());

/// Both orderings of the pencil (G + G^H, G sigma G^H). Forward: A x = l B x,
/// PD holds iff l_min >= 2 with A >= 0 on ker B. Reversed: B x = m A x, PD
/// holds iff m_max <= 1/2 (reported only when A > 0).
struct PencilReport {
  std::optional<double> forward_min;
  bool kernel_psd = true;
  int kernel_dimension = 0;
  std::optional<double> reversed_max;
  bool forward_verdict = false;
};

struct MimoExactCheck {
  bool holds = false;
  double lambda_min_value = 0.0;  // lambda_min(G + G^H - 2 G sigma G^H)
  double tolerance = 0.0;
  std::optional<PencilReport> pencil;  // present when sigma >= 0
};

MimoExactCheck pd_check_matrix_value(const ComplexMatrix& g, const PassivityIndex& sigma,
                                     const ToleranceConfig& tol = default_tolerances());
/// Throws PoleError, or SingularFeedbackError when sigma_min(I - G sigma) is
/// at or below tol.singular_value.
MimoExactCheck pd_check_mimo_exact(const RationalMatrix& g, const PassivityIndex& sigma, double w,
                                   const ToleranceConfig& tol = default_tolerances());

enum class Verdict { holds, fails, inconclusive };

struct MimoNecessaryCheck {
  Verdict verdict = Verdict::fails;
  bool holds = false;  // verdict == holds
  Complex worst_point{0.0, 0.0};
  /// Signed clearance in the region's own units: r - numerical radius of
  /// (G - c I) for disks, distance(c, W(G)) - r for disk complements,
  /// lambda_min of the Hermitian part for the half-plane.
  double slack = 0.0;
  double tolerance = 0.0;
};

MimoNecessaryCheck pd_check_range_value(const ComplexMatrix& g, const PassivityIndex& sigma, int n_angles = 720,
                                        const ToleranceConfig& tol = default_tolerances());
MimoNecessaryCheck pd_check_mimo_necessary(const RationalMatrix& g, const PassivityIndex& sigma, double w,
                                           int n_angles = 720, const ToleranceConfig& tol = default_tolerances());

struct IfCheck {
  bool holds = false;
  double lambda_min_value = 0.0;  // lambda_min(G + G^H - 2 sigma)
  double tolerance = 0.0;
};

IfCheck pd_check_if_value(const ComplexMatrix& g, const PassivityIndex& sigma,
                          const ToleranceConfig& tol = default_tolerances());
IfCheck pd_check_if(const RationalMatrix& g, const PassivityIndex& sigma, double w,
                    const ToleranceConfig& tol = default_tolerances());

/// PSD test of [[G + G^H, G], [G^H, (2 sigma)^{-1}]]. Throws DomainError
/// unless lambda_min(sigma) > 1e-12.
bool schur_block_check_value(const ComplexMatrix& g, const PassivityIndex& sigma,
                             const ToleranceConfig& tol = default_tolerances());
bool schur_block_check(const RationalMatrix& g, const PassivityIndex& sigma, double w,
                       const ToleranceConfig& tol = default_tolerances());

/// Gain ceiling in dB at the given phase: 20 log10(cos phase) - 20 log10(sigma)
/// for |phase| < pi/2, nullopt otherwise. Throws DomainError for sigma <= 0.
std::optional<double> nichols_bound(double sigma, double phase);

}  // namespace pdregion
