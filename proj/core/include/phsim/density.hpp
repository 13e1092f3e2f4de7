#pragma once

#include "phsim/field.hpp"

namespace phsim {

/// Quadratic Hamiltonian density of an Euler-Bernoulli beam,
///   h = p^2 / (2 rhoA) + EI w_[2]^2 / 2,
/// with nodal coefficient fields rhoA > 0 and EI > 0.
struct QuadraticDensity1D {
  Field1D rhoA;
  Field1D EI;

  QuadraticDensity1D(Field1D rhoA_, Field1D EI_);
  const Grid1D& grid() const { return rhoA.grid(); }
};

/// Quadratic Hamiltonian density of a Kirchhoff-Love plate,
///   h = p^2 / (2 mu)
///     + Xi (w_[20]^2 + w_[02]^2 + 2 nu w_[20] w_[02] + 2 (1 - nu) w_[11]^2) / 2,
/// with nodal fields mu > 0, Xi > 0 and Poisson ratio nu in [0, 0.5).
struct QuadraticDensity2D {
  Field2D mu;
  Field2D Xi;
  double nu = 0.0;

  QuadraticDensity2D(Field2D mu_, Field2D Xi_, double nu_);
  const Grid2D& grid() const { return mu.grid(); }
};

/// Density that is linear in the deflection jet,
///   c = a0 w + a1 w_[1] + a2 w_[2]   (1D),
///   c = a0 w + a10 w_[10] + a01 w_[01] + a20 w_[20] + a11 w_[11] + a02 w_[02]
/// with nodal coefficient fields. Used to evaluate boundary operators of
/// conserved-functional densities; the Casimir densities of this toolkit have
/// only the a0 slot populated.
struct LinearDensity1D {
  Field1D a0, a1, a2;

  explicit LinearDensity1D(const Grid1D& g);
  LinearDensity1D(Field1D a0_, Field1D a1_, Field1D a2_);
  const Grid1D& grid() const { return a0.grid(); }
};

struct LinearDensity2D {
  Field2D a0, a10, a01, a20, a11, a02;

  explicit LinearDensity2D(const Grid2D& g);
  LinearDensity2D(Field2D a0_, Field2D a10_, Field2D a01_, Field2D a20_,
                  Field2D a11_, Field2D a02_);
  const Grid2D& grid() const { return a0.grid(); }
};

}  // namespace phsim
