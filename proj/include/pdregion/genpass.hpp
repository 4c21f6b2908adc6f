#pragma once

#include <string>
#include <vector>

#include "pdregion/bands.hpp"
#include "pdregion/passivity.hpp"
#include "pdregion/pdcore.hpp"

namespace pdregion {

enum class RKind { identity, differentiator, custom_rational };

/// Multiplier R(s) applied to the output-feedback system.
struct ROperator {
  RKind kind = RKind::identity;
  RationalFunction R = RationalFunction::constant(1.0);

  static ROperator identity() { return {}; }
  static ROperator differentiator() { return {RKind::differentiator, RationalFunction({0.0, 1.0}, {1.0})}; }
  static ROperator custom(RationalFunction r) { return {RKind::custom_rational, std::move(r)}; }
};

/// s G(s): the system transform used for the derivative-output example.
RationalFunction derivative_output_system(const RationalFunction& g);

struct GeneralizedPDSample {
  double w = 0.0;
  double re_g = 0.0;
  double im_g = 0.0;
  bool holds = false;
  double margin = 0.0;
};

/// margin = Re R Re G - Im R Im G - sigma |G|^2 Re R at given values of G and
/// R. With r = 1 this is bit-for-bit pd_check_value.
SisoCheck gen_pd_value(Complex g, Complex r, double sigma, const ToleranceConfig& tol = default_tolerances());

/// Throws PoleError at poles of G or R, DomainError when |R(jw)| >= 1e12 and
/// SingularFeedbackError when 1 - sigma G(jw) vanishes.
SisoCheck gen_pd_check(const RationalFunction& g, double sigma, const ROperator& r, double w,
                       const ToleranceConfig& tol = default_tolerances());

GeneralizedPDSample gen_pd_sample(const RationalFunction& g, double sigma, const ROperator& r, double w,
                                  const ToleranceConfig& tol = default_tolerances());

FrequencyBand gen_pd_band(const RationalFunction& g, double sigma, const ROperator& r, const GridSpec& grid = {},
                          const ToleranceConfig& tol = default_tolerances());

/// Full verdict for R = s: the generalized band must cover the whole scan,
/// G must wind about 1/sigma as often as it has unstable poles without
/// touching it, and s N / (D - sigma N) must have admissible axis residues.
/// Throws DomainError for other operators or sigma = 0.
PassivityReport gen_full_passivity(const RationalFunction& g, double sigma, const ROperator& r,
                                   const GridSpec& grid = {}, const ToleranceConfig& tol = default_tolerances());

enum class SliceKind { disk, disk_complement, half_plane, whole_plane };

/// Admissible set for G at one frequency:
///   disk / disk_complement  |z - center| <= radius / >= radius
///   half_plane              Re(conj(normal) z) >= 0
///   whole_plane             no constraint
struct RegionSlice {
  double w = 0.0;
  SliceKind kind = SliceKind::whole_plane;
  Complex center;
  double radius = 0.0;
  Complex normal;
};

/// Slice of the admissible set for G at s = jw.
RegionSlice region_slice(double sigma, Complex r_value, double w);
/// Slice for the derivative-output example, drawn in the coordinates of G
/// (not s G): disk centered at -j/(2 sigma w) with radius 1/(2 sigma w).
RegionSlice derivative_output_slice(double sigma, double w);

std::string describe(const RegionSlice& s, int precision = 6);

/// CSV with header w,re_g,im_g,holds,margin,boundary.
std::string slice_csv(const std::vector<GeneralizedPDSample>& samples, const std::vector<RegionSlice>& slices,
                      int precision = 6);

}  // namespace pdregion
