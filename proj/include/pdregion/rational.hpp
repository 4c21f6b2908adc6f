#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdregion/polynomial.hpp"
#include "pdregion/tolerance.hpp"

namespace pdregion {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Real rational function num(s) / den(s), kept in canonical form: the
/// denominator is monic and any common scalar lives in the numerator.
/// Near pole/zero cancellations are never removed.
class RationalFunction {
 public:
  RationalFunction() : num_(Polynomial::constant(0.0)), den_(Polynomial::constant(1.0)) {}
  /// Throws DomainError if `den` is identically zero.
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction constant(double c) { return {Polynomial::constant(c), Polynomial::constant(1.0)}; }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_strictly_proper() const { return num_.is_zero() || num_.degree() < den_.degree(); }
  bool is_proper() const { return num_.is_zero() || num_.degree() <= den_.degree(); }
  int relative_degree() const { return den_.degree() - (num_.is_zero() ? 0 : num_.degree()); }

  /// Throws PoleError when |den(s)| <= tol.pole_eval.
  Complex eval(Complex s, const ToleranceConfig& tol = default_tolerances()) const;
  /// Frequency response at s = jw.
  Complex freq(double w, const ToleranceConfig& tol = default_tolerances()) const { return eval(Complex(0.0, w), tol); }

  RationalFunction operator-() const { return {-num_, den_}; }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws DomainError when b is identically zero.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Square p x p matrix of rational functions.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t p);
  /// Throws DomainError unless `rows` is square and non-empty.
  explicit RationalMatrix(std::vector<std::vector<RationalFunction>> rows);
  RationalMatrix(const RationalFunction& scalar) : RationalMatrix(std::vector<std::vector<RationalFunction>>{{scalar}}) {}

  std::size_t size() const { return p_; }
  bool is_scalar() const { return p_ == 1; }
  const RationalFunction& operator()(std::size_t i, std::size_t j) const { return entries_[i * p_ + j]; }
  RationalFunction& operator()(std::size_t i, std::size_t j) { return entries_[i * p_ + j]; }

  /// Entrywise evaluation; PoleError carries the offending entry.
  ComplexMatrix eval(Complex s, const ToleranceConfig& tol = default_tolerances()) const;
  ComplexMatrix freq(double w, const ToleranceConfig& tol = default_tolerances()) const {
    return eval(Complex(0.0, w), tol);
  }
  bool is_strictly_proper() const;
  /// Largest pole modulus over all entries (0 when there are no poles).
  double max_pole_modulus() const;

 private:
  std::size_t p_ = 0;
  std::vector<RationalFunction> entries_;
};

/// 1/G = L(s) + C + R(s): polynomial part without constant term, constant
/// term, strictly proper remainder.
struct InverseDecomposition {
  Polynomial L;
  double C = 0.0;
  RationalFunction R;
};

struct Classification {
  int relative_degree = 0;
  int unstable_pole_count = 0;
  std::vector<double> imaginary_axis_poles;  // frequencies w of poles j w
  bool minimal_phase = true;
  std::vector<Complex> poles;
  std::vector<Complex> zeros;
  std::vector<std::string> warnings;
};

/// H = G / (1 - sigma G) = N / (D - sigma N). Throws DomainError when
/// D - sigma N vanishes identically.
RationalFunction of_transform(const RationalFunction& g, double sigma);

/// H = G - sigma, entrywise. Throws DomainError on shape mismatch.
RationalMatrix if_transform(const RationalMatrix& g, const RealMatrix& sigma);

/// Long division of den by num. Throws DomainError unless g is strictly
/// proper with a nonzero numerator.
InverseDecomposition inverse_decomposition(const RationalFunction& g);

Classification classify(const RationalFunction& g, const ToleranceConfig& tol = default_tolerances());

/// Residue N(s0) / D'(s0) at a simple pole s0.
Complex residue_at(const RationalFunction& g, Complex s0);

}  // namespace pdregion
