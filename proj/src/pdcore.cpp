#include "pdregion/pdcore.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "pdregion/error.hpp"

namespace pdregion {

PassivityIndex::PassivityIndex(double sigma) : m_(RealMatrix::Constant(1, 1, sigma)), lambda_min_(sigma) {
  if (!std::isfinite(sigma)) throw DomainError("passivity index must be finite");
}

PassivityIndex::PassivityIndex(const RealMatrix& m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw DomainError("passivity index must be a non-empty square matrix");
  if (!m.allFinite()) throw DomainError("passivity index must be finite");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw DomainError("passivity index is not symmetric (max |S - S^T| = " + std::to_string(asym) + ")");
  }
  m_ = (m + m.transpose()) * 0.5;
  lambda_min_ = m_.rows() == 1 ? m_(0, 0) : pdregion::lambda_min(HermitianMatrix(m_));
}

double PassivityIndex::scalar() const {
  if (!is_scalar()) throw DomainError("passivity index is a matrix, a scalar was required");
  return m_(0, 0);
}

RealMatrix PassivityIndex::expanded(std::size_t p) const {
  const auto n = static_cast<Eigen::Index>(p);
  if (is_scalar()) return m_(0, 0) * RealMatrix::Identity(n, n);
  if (m_.rows() != n) {
    throw DomainError("passivity index is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.rows()) +
                      " but the system is " + std::to_string(p) + "x" + std::to_string(p));
  }
  return m_;
}

namespace {

// sigma_eff below this (relative to ||sigma||) selects the half-plane.
bool effectively_zero(const PassivityIndex& sigma) {
  return std::abs(sigma.lambda_min()) <= 1e-14 * (1.0 + sigma.matrix().cwiseAbs().maxCoeff());
}

double psd_slack(const HermitianMatrix& m, const ToleranceConfig& tol) {
  return tol.psd * (1.0 + max_row_sum(m.matrix()));
}

}  // namespace

PDRegion pd_region(const PassivityIndex& sigma, FeedbackMode mode) {
  PDRegion r;
  if (mode == FeedbackMode::input_feedforward) {
    r.kind = RegionKind::if_half_plane;
    r.shift = sigma.lambda_min();
    return r;
  }
  if (effectively_zero(sigma)) {
    r.kind = RegionKind::half_plane_re_nonneg;
    return r;
  }
  const double c = 1.0 / (2.0 * sigma.lambda_min());
  r.kind = c > 0.0 ? RegionKind::of_disk : RegionKind::of_disk_complement;
  r.center = c;
  r.radius = std::abs(c);
  return r;
}

double region_depth(const PDRegion& r, Complex z) {
  switch (r.kind) {
    case RegionKind::of_disk:
      return r.radius - std::abs(z - r.center);
    case RegionKind::of_disk_complement:
      return std::abs(z - r.center) - r.radius;
    case RegionKind::half_plane_re_nonneg:
      return z.real();
    case RegionKind::if_half_plane:
      return z.real() - r.shift;
    case RegionKind::generalized:
      break;
  }
  throw DomainError("frequency-dependent regions need a frequency; use the generalized checks");
}

bool region_contains(const PDRegion& r, Complex z, double tol) {
  return region_depth(r, z) >= -tol * (1.0 + std::abs(r.center) + r.radius);
}

SisoCheck pd_check_value(Complex g, double sigma, const ToleranceConfig& tol) {
  if (std::abs(1.0 - sigma * g) <= tol.singular_feedback) {
    throw SingularFeedbackError("1 - sigma G vanishes: the feedback loop is not well defined");
  }
  const double mag2 = std::norm(g);
  SisoCheck out;
  out.margin = g.real() - sigma * mag2;
  out.tolerance = tol.pd_margin * (1.0 + std::abs(g) + std::abs(sigma) * mag2);
  out.holds = out.margin >= -out.tolerance;
  return out;
}

SisoCheck pd_check_siso(const RationalFunction& g, double sigma, double w, const ToleranceConfig& tol) {
  return pd_check_value(g.freq(w, tol), sigma, tol);
}

MimoExactCheck pd_check_matrix_value(const ComplexMatrix& g, const PassivityIndex& sigma,
                                     const ToleranceConfig& tol) {
  const Eigen::Index p = g.rows();
  const ComplexMatrix s = sigma.expanded(static_cast<std::size_t>(p)).cast<Complex>();
  const ComplexMatrix loop = ComplexMatrix::Identity(p, p) - g * s;
  const double smin = Eigen::JacobiSVD<ComplexMatrix>(loop).singularValues().minCoeff();
  if (smin <= tol.singular_value) {
    throw SingularFeedbackError("I - G sigma is singular (smallest singular value " + std::to_string(smin) + ")");
  }

  const HermitianMatrix a = HermitianMatrix::hermitian_part(g + g.adjoint());
  const HermitianMatrix b = HermitianMatrix::hermitian_part(g * s * g.adjoint());
  const HermitianMatrix m = HermitianMatrix::hermitian_part(a.matrix() - 2.0 * b.matrix());

  MimoExactCheck out;
  out.lambda_min_value = lambda_min(m);
  out.tolerance = psd_slack(m, tol);
  out.holds = out.lambda_min_value >= -out.tolerance;

  if (sigma.lambda_min() >= -1e-12 * (1.0 + sigma.matrix().cwiseAbs().maxCoeff())) {
    PencilReport rep;
    const PencilResult fwd = pencil_eigs(a, b, tol);
    if (!fwd.eigenvalues.empty()) rep.forward_min = fwd.eigenvalues.front();
    rep.kernel_psd = fwd.kernel_psd;
    rep.kernel_dimension = fwd.kernel_dimension;
    rep.forward_verdict = rep.kernel_psd && (!rep.forward_min || *rep.forward_min >= 2.0 * (1.0 - 1e-9));
    if (lambda_min(a) > tol.range_rank * max_row_sum(a.matrix())) {
      const PencilResult rev = pencil_eigs(b, a, tol);
      if (!rev.eigenvalues.empty()) rep.reversed_max = rev.eigenvalues.back();
    }
    out.pencil = rep;
  }
  return out;
}

MimoExactCheck pd_check_mimo_exact(const RationalMatrix& g, const PassivityIndex& sigma, double w,
                                   const ToleranceConfig& tol) {
  return pd_check_matrix_value(g.freq(w, tol), sigma, tol);
}

MimoNecessaryCheck pd_check_range_value(const ComplexMatrix& g, const PassivityIndex& sigma, int n_angles,
                                        const ToleranceConfig& tol) {
  sigma.expanded(static_cast<std::size_t>(g.rows()));  // shape check only
  const PDRegion region = pd_region(sigma, FeedbackMode::output_feedback);
  const double scale = tol.region * (1.0 + std::abs(region.center) + region.radius);
  MimoNecessaryCheck out;
  out.tolerance = scale;

  switch (region.kind) {
    case RegionKind::of_disk: {
      const Eigen::Index p = g.rows();
      const ComplexMatrix shifted = g - region.center * ComplexMatrix::Identity(p, p);
      const SupportPoint sp = max_support(shifted, n_angles);
      out.slack = region.radius - std::max(sp.value, 0.0);
      out.worst_point = sp.point + region.center;
      out.verdict = out.slack >= -scale ? Verdict::holds : Verdict::fails;
      break;
    }
    case RegionKind::half_plane_re_nonneg: {
      const HermitianMatrix herm = HermitianMatrix::hermitian_part(g);
      const EigenDecomposition e = herm_eig(herm);
      const Eigen::VectorXcd v = e.vectors.col(0);
      out.slack = e.values(0);
      out.worst_point = v.dot(g * v);
      out.tolerance = 0.5 * tol.psd * (1.0 + 2.0 * max_row_sum(herm.matrix()));
      out.verdict = out.slack >= -out.tolerance ? Verdict::holds : Verdict::fails;
      break;
    }
    case RegionKind::of_disk_complement: {
      const RangeSeparation sep = separation_from_numerical_range(g, region.center, n_angles);
      out.slack = sep.value - region.radius;
      out.worst_point = sep.nearest.point;
      if (out.slack > scale) {
        out.verdict = Verdict::holds;
      } else if (out.slack < -scale) {
        out.verdict = Verdict::fails;
      } else {
        out.verdict = Verdict::inconclusive;
      }
      break;
    }
    default:
      throw DomainError("unexpected region kind in the numerical-range check");
  }
  out.holds = out.verdict == Verdict::holds;
  return out;
}

MimoNecessaryCheck pd_check_mimo_necessary(const RationalMatrix& g, const PassivityIndex& sigma, double w,
                                           int n_angles, const ToleranceConfig& tol) {
  return pd_check_range_value(g.freq(w, tol), sigma, n_angles, tol);
}

IfCheck pd_check_if_value(const ComplexMatrix& g, const PassivityIndex& sigma, const ToleranceConfig& tol) {
  const ComplexMatrix s = sigma.expanded(static_cast<std::size_t>(g.rows())).cast<Complex>();
  const HermitianMatrix m = HermitianMatrix::hermitian_part(g + g.adjoint() - 2.0 * s);
  IfCheck out;
  out.lambda_min_value = lambda_min(m);
  out.tolerance = psd_slack(m, tol);
  out.holds = out.lambda_min_value >= -out.tolerance;
  return out;
}

IfCheck pd_check_if(const RationalMatrix& g, const PassivityIndex& sigma, double w, const ToleranceConfig& tol) {
  return pd_check_if_value(g.freq(w, tol), sigma, tol);
}

bool schur_block_check_value(const ComplexMatrix& g, const PassivityIndex& sigma, const ToleranceConfig& tol) {
  if (sigma.lambda_min() <= 1e-12) throw DomainError("block check needs a positive definite sigma");
  const Eigen::Index p = g.rows();
  const RealMatrix s = sigma.expanded(static_cast<std::size_t>(p));
  const EigenDecomposition es = herm_eig(HermitianMatrix(s));
  const Eigen::VectorXcd inv_vals = es.values.cwiseInverse().cast<Complex>();
  const ComplexMatrix half_inv = 0.5 * es.vectors * inv_vals.asDiagonal() * es.vectors.adjoint();

  ComplexMatrix block(2 * p, 2 * p);
  block.topLeftCorner(p, p) = g + g.adjoint();
  block.topRightCorner(p, p) = g;
  block.bottomLeftCorner(p, p) = g.adjoint();
  block.bottomRightCorner(p, p) = half_inv;
  return is_psd(HermitianMatrix::hermitian_part(block), tol.psd);
}

bool schur_block_check(const RationalMatrix& g, const PassivityIndex& sigma, double w, const ToleranceConfig& tol) {
  return schur_block_check_value(g.freq(w, tol), sigma, tol);
}

std::optional<double> nichols_bound(double sigma, double phase) {
  if (!(sigma > 0.0)) throw DomainError("Nichols bound needs sigma > 0");
  if (std::abs(phase) >= std::numbers::pi / 2.0) return std::nullopt;
  return 20.0 * std::log10(std::cos(phase)) - 20.0 * std::log10(sigma);
}

}  // namespace pdregion
