#pragma once

#include <vector>

#include <Eigen/Core>

#include "pdregion/polynomial.hpp"
#include "pdregion/rational.hpp"
#include "pdregion/tolerance.hpp"

namespace pdregion {

/// Complex Hermitian matrix. The constructor accepts matrices that are
/// Hermitian to within the symmetry tolerance and symmetrizes them exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Throws DomainError if `m` is not square or not Hermitian within `tol`.
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = default_tolerances().hermitian_symmetry);
  explicit HermitianMatrix(const RealMatrix& m, double tol = default_tolerances().hermitian_symmetry)
      : HermitianMatrix(ComplexMatrix(m.cast<Complex>()), tol) {}

  /// Hermitian part (M + M^H) / 2 of an arbitrary square matrix.
  static HermitianMatrix hermitian_part(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index size() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // orthonormal columns matching `values`
};

/// Cyclic complex Jacobi eigensolver. Intended for p <= 64.
EigenDecomposition herm_eig(const HermitianMatrix& m);

/// Max absolute row sum.
double max_row_sum(const ComplexMatrix& m);

/// lambda_min(M) >= -tol * (1 + ||M||).
bool is_psd(const HermitianMatrix& m, double tol = default_tolerances().psd);
double lambda_min(const HermitianMatrix& m);
double lambda_max(const HermitianMatrix& m);

/// Generalized eigenvalues of A x = lambda B x restricted to range(B), plus a
/// report on whether A is PSD on ker(B). Throws DomainError if B is indefinite.
struct PencilResult {
  std::vector<double> eigenvalues;  // ascending
  int kernel_dimension = 0;
  bool kernel_psd = true;
};
PencilResult pencil_eigs(const HermitianMatrix& a, const HermitianMatrix& b,
                         const ToleranceConfig& tol = default_tolerances());

/// Support data of the numerical range W(M) in the direction e^{j theta}:
/// `value` = lambda_max of the Hermitian part of e^{-j theta} M, `vector` its
/// unit eigenvector and `point` = v^H M v, a boundary point of W(M).
struct SupportPoint {
  double theta = 0.0;
  double value = 0.0;
  Eigen::VectorXcd vector;
  Complex point;
};
SupportPoint support_point(const ComplexMatrix& m, double theta);

struct NumericalRangeBoundary {
  std::vector<double> angles;
  std::vector<Complex> boundary_points;
  std::vector<double> support_values;
  std::vector<Eigen::VectorXcd> vectors;
};

/// Boundary of W(M) sampled at `n_angles` equally spaced directions, with
/// non-convex samples removed. Throws DomainError if n_angles < 8.
NumericalRangeBoundary numerical_range(const ComplexMatrix& m, int n_angles);

/// Support point in the direction maximizing the support value: angle grid
/// of `n_angles` points, then golden-section refinement around the best one.
SupportPoint max_support(const ComplexMatrix& m, int n_angles = 720);

/// max |z| over W(M), i.e. max(0, max_support(M).value).
double numerical_radius(const ComplexMatrix& m);

/// max over theta of Re(e^{-j theta} z) - h(theta), h the support function of
/// W(M). Positive values are the Euclidean distance from z to W(M); values
/// <= 0 mean z lies in W(M).
struct RangeSeparation {
  double value = 0.0;
  SupportPoint nearest;
};
RangeSeparation separation_from_numerical_range(const ComplexMatrix& m, Complex z, int n_angles = 720);

}  // namespace pdregion
