#pragma once

#include "phsim/beam.hpp"
#include "phsim/plate.hpp"

namespace phsim {

/// Result of comparing var_deriv_w against a central finite-difference
/// gradient of the quadrature energy, per node and weight-normalized, on the
/// deep interior (at least four layers inside every boundary, where the
/// closure stencils of the energy sum no longer reach).
struct GradientCheck {
  double max_deviation = 0.0;
  double tolerance = 0.0;  // 5 h
  bool pass = false;
};

GradientCheck gradient_consistency_plate(int n);
GradientCheck gradient_consistency_beam(int n);

/// Grid-refinement slope of the energy-rate decomposition residual between
/// 21 and 41 nodes per side, on smooth data that vanishes to second order at
/// the boundary so the closure stencils are exercised.  pass requires slope
/// >= 1.9 with the fine residual still above the rounding floor.
struct SlopeCheck {
  double residual_coarse = 0.0;
  double residual_fine = 0.0;
  double slope = 0.0;
  double floor = 0.0;
  bool pass = false;
};

SlopeCheck decomposition_convergence_1d();
SlopeCheck decomposition_convergence_2d();

/// Verifies that the chain-rule energy rate equals the injected power u . y
/// at sampled states with nonzero inputs (1e-8 relative).
struct PowerCheck {
  double max_rel_error = 0.0;
  bool pass = false;
};

PowerCheck power_identity_plate();
PowerCheck power_identity_beam();

}  // namespace phsim
