#pragma once

#include <Eigen/Core>

#include "phsim/density.hpp"

namespace phsim {

/// Variational derivative of the elastic part of the density with respect to
/// the deflection, assembled by composing the difference operators:
///   1D:  delta_w h = d_[2](EI w_[2]),
///   2D:  delta_w h = d_[20](Xi (w_[20] + nu w_[02]))
///                  + d_[02](Xi (nu w_[20] + w_[02]))
///                  + d_[11](2 Xi (1 - nu) w_[11]).
Field1D var_deriv_w_1d(const QuadraticDensity1D& d, const Field1D& w);
Field2D var_deriv_w_2d(const QuadraticDensity2D& d, const Field2D& w);

/// Variational derivative with respect to the momentum: p / rhoA resp. p / mu,
/// pointwise.
Field1D var_deriv_p(const QuadraticDensity1D& d, const Field1D& p);
Field2D var_deriv_p(const QuadraticDensity2D& d, const Field2D& p);

/// Boundary operator traces in the fixed coordinate frame (no outward
/// orientation signs; the energy-rate decomposition applies those). For the
/// beam density, shear = -d_[1](EI w_[2]) and moment = EI w_[2], both
/// evaluated at the end points. For the plate density the operators are
/// adapted to the edge normal:
///   normal z1 (B1, B3): shear = -d_[10](m1) - d_[01](m12), moment = m1,
///   normal z2 (B2, B4): shear = -d_[01](m2) - d_[10](m12), moment = m2,
/// with m1 = Xi (w_[20] + nu w_[02]), m2 = Xi (nu w_[20] + w_[02]) and
/// m12 = 2 Xi (1 - nu) w_[11]. Traces are ordered by the tangential
/// coordinate.
struct EndTraces {
  double shear = 0.0;
  double moment = 0.0;
};

struct BoundaryData1D {
  EndTraces start;  // z = 0
  EndTraces end;    // z = L
};

struct BoundaryData2D {
  Eigen::VectorXd shear;
  Eigen::VectorXd moment;
};

BoundaryData1D boundary_ops_1d(const QuadraticDensity1D& d, const Field1D& w);
BoundaryData2D boundary_ops_2d(const QuadraticDensity2D& d, const Field2D& w,
                               Edge edge);

/// Boundary operators of a jet-linear density. For coefficients independent
/// of the state these traces do not depend on w:
///   1D:  shear = a1 - d_[1](a2), moment = a2,
///   2D normal z1: shear = a10 - d_[10](a20) - d_[01](a11), moment = a20,
///   2D normal z2: shear = a01 - d_[01](a02) - d_[10](a11), moment = a02.
BoundaryData1D boundary_ops_1d(const LinearDensity1D& c);
BoundaryData2D boundary_ops_2d(const LinearDensity2D& c, Edge edge);

/// Trapezoid quadrature of the density with all jets evaluated by diff().
double quadrature_energy(const QuadraticDensity1D& d, const Field1D& w,
                         const Field1D& p);
double quadrature_energy(const QuadraticDensity2D& d, const Field2D& w,
                         const Field2D& p);

/// Gateaux derivative of quadrature_energy along the direction (vw, vp),
/// evaluated by the chain rule on the discrete energy.
double energy_rate(const QuadraticDensity1D& d, const Field1D& w,
                   const Field1D& p, const Field1D& vw, const Field1D& vp);
double energy_rate(const QuadraticDensity2D& d, const Field2D& w,
                   const Field2D& p, const Field2D& vw, const Field2D& vp);

/// Discrete check of the energy-rate decomposition
///   dH = integral of v . delta h + boundary terms,
/// where dH is energy_rate, the domain term pairs (vw, vp) with the
/// variational derivatives under trapezoid quadrature, and the boundary terms
/// pair the traces of v and of its normal derivative with the boundary
/// operators, oriented with + on the upper edges (z = L side) and - on the
/// lower edges (z = 0 side). Corner contributions of the mixed plate moment
/// are not included; use test data whose velocity vanishes at the corners.
struct DecompositionResult {
  double rate_chain = 0.0;
  double domain_term = 0.0;
  double boundary_term = 0.0;
  double residual = 0.0;  // |rate_chain - domain_term - boundary_term|
};

DecompositionResult decomposition_check(const QuadraticDensity1D& d,
                                        const Field1D& w, const Field1D& p,
                                        const Field1D& vw, const Field1D& vp);
DecompositionResult decomposition_check(const QuadraticDensity2D& d,
                                        const Field2D& w, const Field2D& p,
                                        const Field2D& vw, const Field2D& vp);

}  // namespace phsim
