#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <array>
#include <vector>

#include "phsim/stencil_table.hpp"

namespace phsim {

/// Shared semi-discrete backbone of both plants. The state is (w, p) with all
/// nodal values in flat storage order; the dynamics are
///   dw/dt = p / mass,
///   dp/dt = -W^{-1} Kel w + gcol[0] u0 + gcol[1] u1,
/// where W holds the trapezoid weights, Kel is the weighted elastic stiffness
/// (so the elastic energy is w' Kel w / 2 and the force is the exact negative
/// energy gradient per unit weight), and gcol[k] is the nodal input column of
/// channel k. The collocated outputs are
///   y[k] = port_vec[k] . (p / mass),
/// chosen so that u0 y0 + u1 y1 equals the injected power d/dt H exactly in
/// the semi-discrete system.
struct PlantCore {
  int n1 = 0;
  int n2 = 1;  // 1 for the beam
  int N = 0;

  Eigen::VectorXd weights;   // trapezoid quadrature weights per node
  Eigen::VectorXd inv_mass;  // 1 / (mu or rhoA) per node
  Eigen::SparseMatrix<double> Kel;
  StencilTable force;  // fast form of -W^{-1} Kel
  std::array<Eigen::VectorXd, 2> gcol;
  std::array<Eigen::VectorXd, 2> port_vec;
  std::vector<int> pinned;  // nodes held at zero by the clamp
  double omega_max = 0.0;   // top of the discrete frequency range
};

/// H = w' Kel w / 2 + sum_i weights[i] p[i]^2 inv_mass[i] / 2.
double plant_hamiltonian(const PlantCore& core, const Eigen::VectorXd& w,
                         const Eigen::VectorXd& p);

/// Elastic part w' Kel w / 2 alone.
double plant_elastic_energy(const PlantCore& core, const Eigen::VectorXd& w);

/// Evaluates the dynamics into preallocated dw, dp (size N each).
void plant_core_rhs(const PlantCore& core, const double* w, const double* p,
                    const std::array<double, 2>& u, double* dw, double* dp);

/// Collocated outputs y[k] = port_vec[k] . (p / mass).
std::array<double, 2> plant_core_outputs(const PlantCore& core,
                                         const Eigen::VectorXd& p);

}  // namespace phsim
