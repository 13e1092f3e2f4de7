#pragma once

#include <array>

#include "phsim/field.hpp"

namespace phsim {

/// Footprints of the two symmetric piezo patch pairs. Both pairs share the
/// same z1 span [zp1, zp1 + Lp1]; pair k covers [zp2[k-1], zp2[k-1] + Lp2]
/// in z2.
struct PatchGeometry {
  double zp1 = 0.25;
  double Lp1 = 0.25;
  double Lp2 = 0.25;
  std::array<double, 2> zp2 = {0.1, 0.65};

  /// Patches must lie strictly inside the domain, keeping clear of the
  /// boundary closure band (two grid spacings per side).
  void validate(const Grid2D& g) const;
};

/// Material and coupling constants of one patch layer.
struct PiezoParams {
  double PsiP = 1.0;       // piezoelectric coupling strength
  double a1 = 1.0;         // weight of the z1 curvature contribution
  double a2 = 1.0;         // weight of the z2 curvature contribution
  double sigma = 100.0;    // tanh transition steepness of the smooth footprint
  double rho_p_h_p = 1.0;  // patch mass per area
  double Xi_p = 1.0;       // patch bending stiffness
};

enum class PatchProfile { Heaviside, Smooth };

/// Scalar footprint Gamma_k of patch pair k (1-based) on the grid. Heaviside
/// mode uses exact indicator values with half-open membership [start, end);
/// smooth mode uses products of tanh steps,
///   X(z) = (tanh(sigma (z - a)) - tanh(sigma (z - b))) / 2.
Field2D characteristic_function(const PatchGeometry& geom, int k,
                                const Grid2D& grid, PatchProfile mode,
                                double sigma);

/// Input distribution Lambda_k of patch pair k,
///   Lambda_k = PsiP (a1 X'' Z_k + a2 X Z_k''),
/// where the curvature factors are centered second differences of the sampled
/// tanh steps (ghost-extended past the domain ends, where the tails are
/// negligible). Differencing the samples keeps summation by parts exact on
/// the grid, so the load applies the footprint's edge moments to the resolved
/// modes even when the transition width 1/sigma is below the grid spacing;
/// sampling the analytic derivatives instead would concentrate the field in
/// sub-cell bands that the quadrature cannot see. Only the smooth profile is
/// differentiable; Heaviside mode is rejected. The plate model couples
/// through g_2k = -Lambda_k.
Field2D input_distribution(const PatchGeometry& geom, int k,
                           const PiezoParams& piezo, const Grid2D& grid,
                           PatchProfile mode = PatchProfile::Smooth);

/// True when the tanh transition is resolved by the grid
/// (sigma * max(h1, h2) <= 4).
bool sigma_resolved(double sigma, const Grid2D& grid);

}  // namespace phsim
