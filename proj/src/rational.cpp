#include "pdregion/rational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdregion/error.hpp"

namespace pdregion {

namespace {

// Removes a power of s that divides both polynomials exactly (both have
// vanishing low-order coefficients). Other common factors are left alone.
void cancel_common_monomial(std::vector<double>& num, std::vector<double>& den) {
  std::size_t k = 0;
  while (k + 1 < num.size() && k + 1 < den.size() && num[k] == 0.0 && den[k] == 0.0) ++k;
  if (k == 0) return;
  num.erase(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(k));
  den.erase(den.begin(), den.begin() + static_cast<std::ptrdiff_t>(k));
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator polynomial");
  std::vector<double> n = num.coeffs();
  std::vector<double> d = den.coeffs();
  if (num.is_zero()) {
    num_ = Polynomial::constant(0.0);
    den_ = Polynomial::constant(1.0);
    return;
  }
  cancel_common_monomial(n, d);
  const double lead = d.back();
  for (double& c : n) c /= lead;
  for (double& c : d) c /= lead;
  num_ = Polynomial(std::move(n));
  den_ = Polynomial(std::move(d));
}

Complex RationalFunction::eval(Complex s, const ToleranceConfig& tol) const {
  const Complex d = den_.eval(s);
  if (std::abs(d) <= tol.pole_eval) {
    std::ostringstream msg;
    msg << "evaluation at a pole: s = " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag()
        << "j, |den| = " << std::abs(d);
    throw PoleError(msg.str(), 0, 0, std::abs(d));
  }
  return num_.eval(s) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num_.is_zero()) throw DomainError("division by the zero rational function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

RationalMatrix::RationalMatrix(std::size_t p) : p_(p), entries_(p * p) {}

RationalMatrix::RationalMatrix(std::vector<std::vector<RationalFunction>> rows) {
  if (rows.empty()) throw DomainError("rational matrix must be non-empty");
  p_ = rows.size();
  entries_.reserve(p_ * p_);
  for (auto& row : rows) {
    if (row.size() != p_) {
      throw DomainError("rational matrix must be square: got a row of length " + std::to_string(row.size()) +
                        " in a matrix with " + std::to_string(p_) + " rows");
    }
    for (auto& e : row) entries_.push_back(std::move(e));
  }
}

ComplexMatrix RationalMatrix::eval(Complex s, const ToleranceConfig& tol) const {
  ComplexMatrix m(static_cast<Eigen::Index>(p_), static_cast<Eigen::Index>(p_));
  for (std::size_t i = 0; i < p_; ++i) {
    for (std::size_t j = 0; j < p_; ++j) {
      try {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).eval(s, tol);
      } catch (const PoleError& e) {
        throw PoleError(std::string(e.what()) + " in entry (" + std::to_string(i) + "," + std::to_string(j) + ")", i,
                        j, e.denominator_magnitude());
      }
    }
  }
  return m;
}

bool RationalMatrix::is_strictly_proper() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_strictly_proper(); });
}

double RationalMatrix::max_pole_modulus() const {
  double m = 0.0;
  for (const auto& e : entries_) {
    if (e.den().degree() < 1) continue;
    for (const Complex& r : roots(e.den())) m = std::max(m, std::abs(r));
  }
  return m;
}

RationalFunction of_transform(const RationalFunction& g, double sigma) {
  const Polynomial& n = g.num();
  const Polynomial& d = g.den();
  const double noise = 1e-14 * std::max(d.max_abs(), std::abs(sigma) * n.max_abs());
  std::vector<double> c = (d - sigma * n).coeffs();
  // Leading terms at rounding level come from D and sigma N cancelling.
  while (c.size() > 1 && std::abs(c.back()) <= noise) c.pop_back();
  if (std::abs(c.back()) <= noise) {
    throw DomainError("output-feedback transform is singular: G is identically 1/sigma");
  }
  return {n, Polynomial(std::move(c))};
}

RationalMatrix if_transform(const RationalMatrix& g, const RealMatrix& sigma) {
  const auto p = static_cast<Eigen::Index>(g.size());
  if (sigma.rows() != p || sigma.cols() != p) {
    throw DomainError("input-feedforward transform: sigma is " + std::to_string(sigma.rows()) + "x" +
                      std::to_string(sigma.cols()) + " but G is " + std::to_string(p) + "x" + std::to_string(p));
  }
  RationalMatrix h = g;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      h(i, j) = g(i, j) - RationalFunction::constant(sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  return h;
}

InverseDecomposition inverse_decomposition(const RationalFunction& g) {
  if (g.num().is_zero()) throw DomainError("inverse decomposition of the zero function");
  if (!g.is_strictly_proper()) throw DomainError("inverse decomposition requires a strictly proper G");
  auto [quot, rem] = divmod(g.den(), g.num());
  InverseDecomposition out;
  out.C = quot[0];
  std::vector<double> lc = quot.coeffs();
  lc[0] = 0.0;
  out.L = Polynomial(std::move(lc));
  out.R = RationalFunction(rem, g.num());
  return out;
}

Classification classify(const RationalFunction& g, const ToleranceConfig& tol) {
  Classification c;
  c.relative_degree = g.relative_degree();
  if (g.den().degree() >= 1) c.poles = roots(g.den());
  if (!g.num().is_zero() && g.num().degree() >= 1) c.zeros = roots(g.num());

  double max_root = 0.0;
  for (const auto& r : c.poles) max_root = std::max(max_root, std::abs(r));
  for (const auto& r : c.zeros) max_root = std::max(max_root, std::abs(r));
  const double tol_stab = tol.stability * (1.0 + max_root);

  for (const auto& r : c.poles) {
    if (r.real() > tol_stab) {
      ++c.unstable_pole_count;
    } else if (std::abs(r.real()) <= tol_stab) {
      c.imaginary_axis_poles.push_back(r.imag());
    }
  }
  std::sort(c.imaginary_axis_poles.begin(), c.imaginary_axis_poles.end());
  c.minimal_phase = std::all_of(c.zeros.begin(), c.zeros.end(), [&](const Complex& z) { return z.real() < -tol_stab; });

  for (const auto& z : c.zeros) {
    for (const auto& p : c.poles) {
      if (std::abs(z - p) < tol.cancellation * (1.0 + std::abs(p))) {
        std::ostringstream msg;
        msg << "near pole/zero cancellation at " << p.real() << (p.imag() < 0 ? "" : "+") << p.imag() << "j";
        c.warnings.push_back(msg.str());
      }
    }
  }
  return c;
}

Complex residue_at(const RationalFunction& g, Complex s0) {
  const Complex dd = g.den().derivative().eval(s0);
  if (dd == Complex(0.0, 0.0)) throw DomainError("residue: pole is not simple");
  return g.num().eval(s0) / dd;
}

}  // namespace pdregion
