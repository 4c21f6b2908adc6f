#include "pdregion/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "pdregion/error.hpp"

namespace pdregion {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int k) {
  if (k < 0) throw DomainError("monomial: negative power");
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_real_roots(std::span<const double> rs) {
  Polynomial p = constant(1.0);
  for (double r : rs) p *= Polynomial({-r, 1.0});
  return p;
}

Polynomial Polynomial::from_roots(std::span<const Complex> rs) {
  std::vector<Complex> acc{1.0};
  for (const Complex& r : rs) {
    std::vector<Complex> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] -= r * acc[i];
      next[i + 1] += acc[i];
    }
    acc = std::move(next);
  }
  std::vector<double> c(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) c[i] = acc[i].real();
  return Polynomial(std::move(c));
}

double Polynomial::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::eval(Complex s) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::eval(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::trimmed(double rel) const {
  const double cutoff = rel * max_abs();
  std::vector<double> c = coeffs_;
  while (c.size() > 1 && std::abs(c.back()) <= cutoff) c.pop_back();
  if (c.size() == 1 && std::abs(c[0]) <= cutoff) c[0] = 0.0;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (double& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_ = {0.0};
    return *this;
  }
  std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double k) {
  for (double& c : coeffs_) c *= k;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<double> rem = a.coeffs();
  std::vector<double> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0.0);
  const double lead = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const double q = rem[static_cast<std::size_t>(k + db)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * b[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k + db)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(std::max(db, 1)));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<Complex> roots(const Polynomial& p) {
  if (p.degree() < 1) throw DomainError("roots: polynomial of degree < 1");
  const auto& c = p.coeffs();

  std::vector<Complex> out;
  std::size_t low = 0;
  while (c[low] == 0.0) {
    out.emplace_back(0.0, 0.0);
    ++low;
  }
  const int n = p.degree() - static_cast<int>(low);
  if (n == 0) return out;

  const double lead = p.leading();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[low + static_cast<std::size_t>(i)] / lead;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("roots: companion eigenvalue solver failed");

  const Polynomial dp = p.derivative();
  for (int i = 0; i < n; ++i) {
    Complex r = solver.eigenvalues()(i);
    const Complex fr = p.eval(r);
    const Complex dfr = dp.eval(r);
    if (std::abs(dfr) > 0.0) {
      const Complex polished = r - fr / dfr;
      if (std::abs(p.eval(polished)) < std::abs(fr)) r = polished;
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace pdregion
