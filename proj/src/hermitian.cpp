#include "pdregion/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include "pdregion/error.hpp"

namespace pdregion {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DomainError("Hermitian matrix must be square");
  const ComplexMatrix diff = m - m.adjoint();
  const double asym = diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
  if (asym > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw DomainError("matrix is not Hermitian (max |M - M^H| = " + std::to_string(asym) + ")");
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("Hermitian part of a non-square matrix");
  HermitianMatrix h;
  h.m_ = (m + m.adjoint()) * 0.5;
  return h;
}

EigenDecomposition herm_eig(const HermitianMatrix& hm) {
  ComplexMatrix a = hm.matrix();
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double scale = a.norm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (off == 0.0 || std::sqrt(off) <= 1e-17 * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double abs_g = std::abs(g);
        if (abs_g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (abs_g <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const Complex phase_conj = std::conj(g) / abs_g;
        const double tau = (aqq - app) / (2.0 * abs_g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * phase_conj;
        const Complex uqq = c * phase_conj;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

double max_row_sum(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double lambda_min(const HermitianMatrix& m) {
  if (m.size() == 0) return 0.0;
  return herm_eig(m).values(0);
}

double lambda_max(const HermitianMatrix& m) {
  if (m.size() == 0) return 0.0;
  return herm_eig(m).values(m.size() - 1);
}

bool is_psd(const HermitianMatrix& m, double tol) {
  if (tol < 0.0) throw DomainError("is_psd: negative tolerance");
  if (m.size() == 0) return true;
  return lambda_min(m) >= -tol * (1.0 + max_row_sum(m.matrix()));
}

PencilResult pencil_eigs(const HermitianMatrix& a, const HermitianMatrix& b, const ToleranceConfig& tol) {
  if (a.size() != b.size()) throw DomainError("pencil_eigs: size mismatch");
  const EigenDecomposition eb = herm_eig(b);
  const double norm_b = max_row_sum(b.matrix());
  const Eigen::Index n = b.size();
  if (n > 0 && eb.values(0) < -1e-12 * (1.0 + norm_b)) {
    throw DomainError("pencil_eigs: B is indefinite (lambda_min = " + std::to_string(eb.values(0)) + ")");
  }
  const double threshold = tol.range_rank * norm_b;
  std::vector<Eigen::Index> range;
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (norm_b > 0.0 && eb.values(i) > threshold) {
      range.push_back(i);
    } else {
      kernel.push_back(i);
    }
  }

  PencilResult out;
  out.kernel_dimension = static_cast<int>(kernel.size());
  if (!range.empty()) {
    const auto r = static_cast<Eigen::Index>(range.size());
    ComplexMatrix w(n, r);
    for (Eigen::Index k = 0; k < r; ++k) {
      const Eigen::Index i = range[static_cast<std::size_t>(k)];
      w.col(k) = eb.vectors.col(i) / std::sqrt(eb.values(i));
    }
    const ComplexMatrix reduced = w.adjoint() * a.matrix() * w;
    const EigenDecomposition er = herm_eig(HermitianMatrix::hermitian_part(reduced));
    out.eigenvalues.assign(er.values.data(), er.values.data() + er.values.size());
  }
  if (!kernel.empty()) {
    const auto k = static_cast<Eigen::Index>(kernel.size());
    ComplexMatrix vk(n, k);
    for (Eigen::Index c = 0; c < k; ++c) vk.col(c) = eb.vectors.col(kernel[static_cast<std::size_t>(c)]);
    out.kernel_psd = is_psd(HermitianMatrix::hermitian_part(vk.adjoint() * a.matrix() * vk), tol.psd);
  }
  return out;
}

SupportPoint support_point(const ComplexMatrix& m, double theta) {
  const Complex rot = std::polar(1.0, -theta);
  const EigenDecomposition e = herm_eig(HermitianMatrix::hermitian_part(rot * m));
  SupportPoint sp;
  sp.theta = theta;
  const Eigen::Index last = e.values.size() - 1;
  sp.value = e.values(last);
  sp.vector = e.vectors.col(last);
  sp.point = sp.vector.dot(m * sp.vector);  // dot() conjugates the left operand
  return sp;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maximizes f over [0, 2pi): grid of n points, then golden-section search on
// the bracket around the best grid angle. Returns (theta, value).
std::pair<double, double> maximize_periodic(const std::function<double(double)>& f, int n) {
  double best_theta = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  const double step = kTwoPi / n;
  for (int k = 0; k < n; ++k) {
    const double th = k * step;
    const double v = f(th);
    if (v > best) {
      best = v;
      best_theta = th;
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - step;
  double hi = best_theta + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  if (f1 > best) {
    best = f1;
    best_theta = x1;
  }
  if (f2 > best) {
    best = f2;
    best_theta = x2;
  }
  return {best_theta, best};
}

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

NumericalRangeBoundary numerical_range(const ComplexMatrix& m, int n_angles) {
  if (n_angles < 8) throw DomainError("numerical_range: need at least 8 angles");
  if (m.rows() != m.cols()) throw DomainError("numerical_range: matrix must be square");
  NumericalRangeBoundary out;
  for (int k = 0; k < n_angles; ++k) {
    const double th = kTwoPi * k / n_angles;
    SupportPoint sp = support_point(m, th);
    out.angles.push_back(th);
    out.boundary_points.push_back(sp.point);
    out.support_values.push_back(sp.value);
    out.vectors.push_back(std::move(sp.vector));
  }

  // Support points advance counter-clockwise with theta; drop any sample that
  // makes a right turn (eigenvector jitter at multiple eigenvalues).
  double extent = 0.0;
  for (const auto& z : out.boundary_points) extent = std::max(extent, std::abs(z - out.boundary_points.front()));
  const double eps = 1e-9 * std::max(1.0, extent * extent);
  bool changed = true;
  while (changed && out.boundary_points.size() > 3) {
    changed = false;
    const std::size_t n = out.boundary_points.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Complex prev = out.boundary_points[(i + n - 1) % n];
      const Complex cur = out.boundary_points[i];
      const Complex next = out.boundary_points[(i + 1) % n];
      if (cross(prev, cur, next) < -eps) {
        const auto idx = static_cast<std::ptrdiff_t>(i);
        out.angles.erase(out.angles.begin() + idx);
        out.boundary_points.erase(out.boundary_points.begin() + idx);
        out.support_values.erase(out.support_values.begin() + idx);
        out.vectors.erase(out.vectors.begin() + idx);
        changed = true;
        break;
      }
    }
  }
  return out;
}

SupportPoint max_support(const ComplexMatrix& m, int n_angles) {
  if (m.rows() != m.cols() || m.size() == 0) throw DomainError("max_support: matrix must be square and non-empty");
  if (n_angles < 8) throw DomainError("max_support: need at least 8 angles");
  const auto [theta, value] = maximize_periodic([&](double th) { return support_point(m, th).value; }, n_angles);
  return support_point(m, theta);
}

double numerical_radius(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("numerical_radius: matrix must be square");
  if (m.size() == 0) return 0.0;
  return std::max(max_support(m).value, 0.0);
}

RangeSeparation separation_from_numerical_range(const ComplexMatrix& m, Complex z, int n_angles) {
  if (m.rows() != m.cols()) throw DomainError("separation_from_numerical_range: matrix must be square");
  if (n_angles < 8) throw DomainError("separation_from_numerical_range: need at least 8 angles");
  auto g = [&](double th) { return (std::polar(1.0, -th) * z).real() - support_point(m, th).value; };
  const auto [theta, value] = maximize_periodic(g, n_angles);
  return {value, support_point(m, theta)};
}

}  // namespace pdregion
