#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "pdregion/tolerance.hpp"

namespace pdregion {

using Complex = std::complex<double>;

/// Real polynomial stored as ascending-power coefficients, c[0] + c[1] s + ...
/// Trailing zeros are trimmed; the zero polynomial is {0}.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// The monomial s^k.
  static Polynomial monomial(int k);
  /// Monic polynomial with the given real roots.
  static Polynomial from_real_roots(std::span<const double> roots);
  /// Monic real polynomial with the given roots. The root set must be closed
  /// under conjugation; imaginary parts of the expanded coefficients are dropped.
  static Polynomial from_roots(std::span<const Complex> roots);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.back(); }
  double operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
  /// Largest absolute coefficient.
  double max_abs() const;

  Complex eval(Complex s) const;
  double eval(double s) const;
  Polynomial derivative() const;

  /// Drop leading terms with |c| <= rel * max|c|.
  Polynomial trimmed(double rel) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(double k);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, double k) { return a *= k; }
  friend Polynomial operator*(double k, Polynomial a) { return a *= k; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Quotient and remainder of a / b (b not identically zero).
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// All complex roots of p with multiplicity. Companion-matrix eigenvalues
/// followed by one Newton polish step per root. Exact zero roots (vanishing
/// low-order coefficients) are deflated first and returned as exact 0.
/// Throws DomainError for degree < 1.
std::vector<Complex> roots(const Polynomial& p);

}  // namespace pdregion
