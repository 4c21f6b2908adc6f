#include "pdregion/grid.hpp"

#include <cmath>

#include "pdregion/error.hpp"

namespace pdregion {

void GridSpec::validate() const {
  if (!(std::isfinite(w_min) && std::isfinite(w_max))) throw DomainError("grid bounds must be finite");
  if (!(w_max > w_min)) throw DomainError("grid needs w_max > w_min");
  if (points_per_decade < 10) throw DomainError("grid needs at least 10 points per decade");
  if (scale == GridScale::log && !(w_min > 0.0)) throw DomainError("log grid needs w_min > 0");
  if (scale == GridScale::linear && w_min < 0.0) throw DomainError("linear grid needs w_min >= 0");
}

std::vector<double> GridSpec::samples() const {
  validate();
  std::vector<double> out;
  const double ppd = points_per_decade;
  if (scale == GridScale::log) {
    const auto k_lo = static_cast<long>(std::ceil(std::log10(w_min) * ppd - 1e-9));
    const auto k_hi = static_cast<long>(std::floor(std::log10(w_max) * ppd + 1e-9));
    for (long k = k_lo; k <= k_hi; ++k) out.push_back(std::pow(10.0, static_cast<double>(k) / ppd));
    if (out.empty()) throw DomainError("grid range contains no decade points");
    return out;
  }
  const double decades = std::log10(w_max / std::max(w_min, w_max * 1e-3));
  const auto n = static_cast<long>(ppd * std::max(1.0, std::ceil(decades - 1e-12)));
  for (long i = 0; i <= n; ++i) out.push_back(w_min + (w_max - w_min) * static_cast<double>(i) / static_cast<double>(n));
  return out;
}

}  // namespace pdregion
