#pragma once

namespace pdregion {

// Every numerical threshold used across the toolkit. Commands share one
// instance so that results are reproducible between subcommands.
struct ToleranceConfig {
  double pole_eval = 1e-300;          // |den(s)| at or below -> pole
  double root_residual = 1e-8;        // |p(r)| / ||p|| after polishing
  double stability = 1e-9;            // tol_stab = stability * (1 + max|root|)
  double cancellation = 1e-8;         // near pole/zero cancellation warning
  double psd = 1e-10;                 // lambda_min >= -psd * (1 + ||M||)
  double pd_margin = 1e-12;           // scalar PD margin slack
  double singular_feedback = 1e-12;   // |1 - sigma G| threshold
  double singular_value = 1e-10;      // sigma_min(I - G sigma) threshold
  double hermitian_symmetry = 1e-12;  // symmetrization acceptance
  double range_rank = 1e-10;          // rank threshold in pencil projection
  double band_edge = 1e-8;            // |dw| / w for refined edges
  double winding_residual = 0.05;     // allowed |total/2pi - round|
  double forbidden_point = 1e-9;      // min |G - 1/sigma| on the curve
  double strict_margin = 1e-7;        // containment slack for strictness
  double residue = 1e-9;              // residue sign/imaginary tolerance
  double region = 1e-9;               // region membership slack
};

inline const ToleranceConfig& default_tolerances() {
  static const ToleranceConfig config{};
  return config;
}

}  // namespace pdregion
