#pragma once

// Shared fixtures and hand-rolled random generators for the test suites.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pdregion/rational.hpp"
#include "pdregion/tfparse.hpp"

namespace testing {

using pdregion::Complex;
using pdregion::ComplexMatrix;
using pdregion::Polynomial;
using pdregion::RationalFunction;
using pdregion::RationalMatrix;

inline RationalFunction g1() { return pdregion::parse_expression("1/(0.1*s+0.5)"); }
inline RationalFunction g2() { return pdregion::parse_expression("1/(s*(0.3*s+0.5))"); }
inline RationalFunction g3() { return pdregion::parse_expression("1/((0.02*s+1)*(0.3*s+0.5))"); }
inline RationalFunction gc() { return pdregion::parse_expression("0.1/(0.02*s+1)"); }
inline RationalMatrix g4() { return RationalMatrix({{g3(), gc()}, {gc(), g1()}}); }

/// Deterministic generator; every suite seeds its own instance.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  Complex complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

  ComplexMatrix matrix(int p, double scale = 1.0) {
    ComplexMatrix m(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) m(i, j) = complex(scale);
    }
    return m;
  }

  ComplexMatrix hermitian(int p, double scale = 1.0) {
    const ComplexMatrix m = matrix(p, scale);
    return (m + m.adjoint()) / 2.0;
  }

  Eigen::MatrixXd symmetric(int p, double lo, double hi) {
    Eigen::MatrixXd m(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = i; j < p; ++j) m(i, j) = m(j, i) = uniform(lo, hi);
    }
    return m;
  }

  /// Monic polynomial whose roots all have real part in [-hi, -lo]; complex
  /// roots come in conjugate pairs.
  Polynomial stable_poly(int degree, double lo = 0.2, double hi = 5.0) {
    std::vector<Complex> r;
    while (static_cast<int>(r.size()) < degree) {
      const double re = -uniform(lo, hi);
      if (degree - static_cast<int>(r.size()) >= 2 && uniform(0.0, 1.0) < 0.5) {
        const double im = uniform(0.1, hi);
        r.emplace_back(re, im);
        r.emplace_back(re, -im);
      } else {
        r.emplace_back(re, 0.0);
      }
    }
    return Polynomial::from_roots(r);
  }

  /// Stable, minimum-phase, strictly proper system with the given relative
  /// degree and a positive gain.
  RationalFunction minimum_phase(int relative_degree, int max_zeros = 2) {
    const int nz = integer(0, max_zeros);
    const Polynomial num = stable_poly(nz) * uniform(0.5, 3.0);
    return RationalFunction(num, stable_poly(nz + relative_degree));
  }

  /// Stable strictly proper system (zeros anywhere).
  RationalFunction stable_system(int max_den = 4) {
    const int nd = integer(1, max_den);
    std::vector<double> num;
    for (int i = 0; i < integer(1, nd); ++i) num.push_back(uniform(-2.0, 2.0));
    if (num.back() == 0.0) num.back() = 1.0;
    return RationalFunction(Polynomial(num), stable_poly(nd));
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace testing
