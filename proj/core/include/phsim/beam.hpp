#pragma once

#include <array>
#include <utility>

#include "phsim/density.hpp"
#include "phsim/plant_core.hpp"

namespace phsim {

/// Physical data of the pointwise-actuated beam. Both ends are free; the two
/// force inputs act at the interior positions A1 and A2, which must coincide
/// with grid nodes.
struct BeamParams {
  double rhoA = 1.0;
  double EI = 1.0;
  double A1 = 0.3;
  double A2 = 0.7;
};

/// Semi-discrete free-free Euler-Bernoulli beam with two point-force input
/// channels. The elastic energy samples the curvature at interior nodes only,
/// so the force (the exact negative weight-normalized energy gradient)
/// realizes the vanishing shear and moment at both ends; any linear
/// deflection is a zero-energy stationary shape. A point input is the nodal
/// indicator scaled by 1/h, which makes it a discrete unit impulse under
/// trapezoid quadrature, and the collocated output is the velocity at the
/// same node, so u1 y1 + u2 y2 equals d/dt H exactly in the semi-discrete
/// system.
class BeamPlant {
 public:
  BeamPlant(const Grid1D& grid, const BeamParams& params);

  const Grid1D& grid() const { return grid_; }
  const BeamParams& params() const { return params_; }
  const QuadraticDensity1D& density() const { return density_; }
  /// Grid node of actuation channel k = 1 or 2.
  int actuation_node(int k) const;
  const PlantCore& core() const { return core_; }

  const Field1D& w() const { return w_; }
  const Field1D& p() const { return p_; }
  void set_state(const Field1D& w, const Field1D& p);

 private:
  Grid1D grid_;
  BeamParams params_;
  QuadraticDensity1D density_;
  std::array<int, 2> node_{0, 0};
  PlantCore core_;
  Field1D w_, p_;
};

/// (dw/dt, dp/dt) at the stored state under inputs u = (u1, u2).
std::pair<Field1D, Field1D> beam_rhs(const BeamPlant& plant,
                                     const std::array<double, 2>& u);

/// Collocated outputs: the velocities at A1 and A2.
std::array<double, 2> beam_outputs(const BeamPlant& plant);

/// Total energy of the stored state.
double hamiltonian(const BeamPlant& plant);

/// Smooth estimate of the first elastic eigenstate (orthogonal to the
/// rigid-motion shapes), used as an initial deflection for conservation
/// studies.
struct ModeEstimate1D {
  Field1D shape;       // scaled so max |w| = amplitude
  double omega = 0.0;  // Rayleigh frequency estimate
};

ModeEstimate1D beam_fundamental_state(const BeamPlant& plant,
                                      double amplitude);

}  // namespace phsim
