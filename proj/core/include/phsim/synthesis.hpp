#pragma once

#include <Eigen/Dense>

#include "phsim/beam.hpp"
#include "phsim/casimir.hpp"
#include "phsim/controller.hpp"
#include "phsim/field.hpp"
#include "phsim/plate.hpp"

namespace phsim {

/// Scalar gains that assemble a 4-state controller.  States 1-2 integrate the
/// plant outputs through the coupling rows of Gc (scaled by
/// coupling_rows_scale, 1 for an invariance-preserving design); states 3-4
/// are damped auxiliary states with inertia matrix Mc = [[Mc33, Mc34],
/// [Mc34, Mc44]] and dissipation Rc = [[Rc33, Rc34], [Rc34, Rc44]].
struct ControllerGains {
  double c1 = 0.0;
  double c2 = 0.0;
  double Jc34 = 0.0;
  double Rc33 = 0.0;
  double Rc34 = 0.0;
  double Rc44 = 0.0;
  double Mc33 = 0.0;
  double Mc34 = 0.0;
  double Mc44 = 0.0;
  double Gc31 = 0.0;
  double Gc32 = 0.0;
  double Gc41 = 0.0;
  double Gc42 = 0.0;
  double coupling_rows_scale = 1.0;
};

/// Reference tuning for the clamped plate with two patch pairs.
ControllerGains plate_default_gains();

/// Reference tuning for the free-free beam with two point actuators.
ControllerGains beam_default_gains();

/// Target plate deflection, built from a quadratic ramp that turns linear
/// past the end of the first patch row and a linear cross profile:
///   w_d(z1, z2) = a z1^2 k(z2)                      for z1 <  zb1
///   w_d(z1, z2) = (b (z1 - zb1) + a zb1^2) k(z2)    for z1 >= zb1
/// with k(z2) = -c + d z2 and zb1 the trailing edge of the first patch row.
struct PlateEquilibrium {
  double a = 0.16;
  double b = 0.12;
  double c = 1.0;
  double d = 2.0;
};

/// Target beam deflection w_d(z) = a z + b (a rigid-body state of the
/// free-free beam).
struct BeamEquilibrium {
  double a = 0.1;
  double b = 0.05;
};

Field2D desired_plate_shape(const PlatePlant& plant,
                            const PlateEquilibrium& eq);
Field1D desired_beam_shape(const BeamPlant& plant, const BeamEquilibrium& eq);

/// Constant input that best balances the elastic force of the desired shape,
/// from a 2x2 least-squares fit over nodes at least one layer inside the
/// boundary.  residual_norm is the relative miss of the fit on that node set.
struct FeedforwardResult {
  Eigen::Vector2d us = Eigen::Vector2d::Zero();
  double residual_norm = 0.0;
};

FeedforwardResult compute_feedforward(const PlatePlant& plant,
                                      const Field2D& w_desired);
FeedforwardResult compute_feedforward(const BeamPlant& plant,
                                      const Field1D& w_desired);

/// Controller plus the invariant data it was built around.
struct PlateSynthesis {
  Controller controller;
  CasimirSpec2D spec;
  Field2D w_desired;
  Eigen::Vector2d us = Eigen::Vector2d::Zero();
  double feedforward_residual = 0.0;
};

struct BeamSynthesis {
  Controller controller;
  CasimirSpec1D spec;
  Field1D w_desired;
};

/// Builds the plate controller: gamma^lambda = -g_{2 lambda}, K = I, the
/// integrator states seeded so the conserved quantities start at zero, and
/// the energy minimum placed at the desired shape via xcd and the
/// feedforward us.  Throws std::invalid_argument for gains that violate the
/// controller structure (validate()).
PlateSynthesis synthesize_plate_controller(const PlatePlant& plant,
                                           const ControllerGains& gains,
                                           const PlateEquilibrium& eq);

/// Beam counterpart: gamma^lambda is an impulse of weight -1/h at actuation
/// node A_lambda and xcd holds the desired end-point deflections; no
/// feedforward is needed because the target is a rigid-body shape.
BeamSynthesis synthesize_beam_controller(const BeamPlant& plant,
                                         const ControllerGains& gains,
                                         const BeamEquilibrium& eq);

}  // namespace phsim
