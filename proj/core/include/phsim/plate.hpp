#pragma once

#include <array>
#include <utility>

#include "phsim/density.hpp"
#include "phsim/materials.hpp"
#include "phsim/plant_core.hpp"

namespace phsim {

/// Physical data of the piezo-actuated plate. The carrier layer is
/// homogeneous; both patch pairs add mass and stiffness symmetrically, so
///   mu = rho_c_h_c + 2 rho_p_h_p (Gamma_1 + Gamma_2),
///   Xi = E_c_I_c + 2 Xi_p (Gamma_1 + Gamma_2).
struct PlateParams {
  double rho_c_h_c = 1.0;  // carrier mass per area
  double E_c_I_c = 1.0;    // carrier bending rigidity
  double nu = 0.2;         // Poisson's ratio
  PiezoParams piezo;
  PatchGeometry geometry;
};

/// Semi-discrete clamped-free Kirchhoff-Love plate with two piezo patch-pair
/// input channels. Edge B1 (z1 = 0) is clamped (w = 0 and vanishing normal
/// slope, realized by pinning the edge nodes and extending w across the edge
/// by its mirror image); edges B2, B3, B4 are free (vanishing shear and
/// moment, realized variationally: the elastic energy samples curvatures only
/// where the natural boundary conditions leave them active, and the force is
/// the exact negative weight-normalized gradient of that energy).
///
/// The input columns are g_2k = -Lambda_k with the clamped row zeroed; the
/// collocated outputs are the integrals of the output densities g_2k dw/dt,
/// so u1 y1 + u2 y2 equals d/dt H exactly in the semi-discrete system.
class PlatePlant {
 public:
  PlatePlant(const Grid2D& grid, const PlateParams& params);

  const Grid2D& grid() const { return grid_; }
  const PlateParams& params() const { return params_; }
  const QuadraticDensity2D& density() const { return density_; }
  /// Input column field of channel k = 1 or 2.
  const Field2D& g2(int k) const;
  const PlantCore& core() const { return core_; }

  const Field2D& w() const { return w_; }
  const Field2D& p() const { return p_; }
  /// Stores the state with the clamped row projected to zero.
  void set_state(const Field2D& w, const Field2D& p);

 private:
  Grid2D grid_;
  PlateParams params_;
  QuadraticDensity2D density_;
  std::array<Field2D, 2> g2_;
  PlantCore core_;
  Field2D w_, p_;
};

/// Zeroes the clamped-edge row of both state components; the normal-slope
/// condition needs no array correction since the mirror extension satisfies
/// it identically.
void apply_bcs(const PlatePlant& plant, Field2D& w, Field2D& p);

/// (dw/dt, dp/dt) at the stored state under inputs u = (u1, u2).
std::pair<Field2D, Field2D> plate_rhs(const PlatePlant& plant,
                                      const std::array<double, 2>& u);

/// Output density fields y_k = g_2k (p / mu); integrate them to get the port
/// outputs.
std::pair<Field2D, Field2D> plate_outputs(const PlatePlant& plant);

/// Total energy of the stored state.
double hamiltonian(const PlatePlant& plant);

/// Smooth low-frequency eigenstate estimate, used as an initial deflection
/// for conservation studies.
struct ModeEstimate2D {
  Field2D shape;       // scaled so max |w| = amplitude
  double omega = 0.0;  // Rayleigh frequency estimate
};

ModeEstimate2D plate_fundamental_state(const PlatePlant& plant,
                                       double amplitude);

}  // namespace phsim
