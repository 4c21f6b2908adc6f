#pragma once

#include <vector>

namespace pdregion {

enum class GridScale { log, linear };

/// Frequency sampling in rad/s. Log grids use the exact decade points
/// 10^(k / points_per_decade) inside [w_min, w_max]; w = 0 is never part of
/// samples() and is added by callers that need it.
struct GridSpec {
  double w_min = 1e-3;
  double w_max = 1e3;
  int points_per_decade = 100;
  GridScale scale = GridScale::log;

  /// Throws DomainError on w_max <= w_min, w_min <= 0 (log) or
  /// points_per_decade < 10.
  void validate() const;
  std::vector<double> samples() const;
};

}  // namespace pdregion
