#pragma once

#include <Eigen/Core>

namespace phsim {

/// Quadratic controller Hamiltonian over four states,
///   Hc = (c1/2) (x1 - x1d - us1/c1)^2 + (c2/2) (x2 - x2d - us2/c2)^2
///      + (1/2) [x3 x4] Mc [x3 x4]',
/// where (x1d, x2d) are the desired values of the two shaping states, us is
/// the constant feedforward absorbed into the quadratic shift, and Mc is the
/// symmetric positive definite weight of the two damping states.
struct ControllerHamiltonian {
  double c1 = 0.0;
  double c2 = 0.0;
  Eigen::Vector2d xcd = Eigen::Vector2d::Zero();
  Eigen::Vector2d us = Eigen::Vector2d::Zero();
  Eigen::Matrix2d Mc = Eigen::Matrix2d::Zero();
};

/// Finite-dimensional controller in port form,
///   dxc/dt = (Jc - Rc) grad Hc(xc) + Gc uc,   yc = Gc' grad Hc(xc),
/// with four states and two ports.
struct Controller {
  static constexpr int nc = 4;

  Eigen::Vector4d xc = Eigen::Vector4d::Zero();
  Eigen::Matrix4d Jc = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d Rc = Eigen::Matrix4d::Zero();
  Eigen::Matrix<double, 4, 2> Gc = Eigen::Matrix<double, 4, 2>::Zero();
  ControllerHamiltonian ham;

  /// Throws std::invalid_argument unless Jc is skew, Rc is symmetric positive
  /// semidefinite (eigenvalues >= -1e-12 ||Rc||), Mc is symmetric positive
  /// definite and c1, c2 > 0.
  void validate() const;
};

double controller_hamiltonian(const ControllerHamiltonian& ham,
                              const Eigen::Vector4d& xc);

/// Analytic gradient (c1 (x1 - x1d) - us1, c2 (x2 - x2d) - us2, Mc [x3 x4]').
Eigen::Vector4d grad_Hc(const ControllerHamiltonian& ham,
                        const Eigen::Vector4d& xc);

Eigen::Vector4d controller_rhs(const Controller& ctrl,
                               const Eigen::Vector2d& uc);

Eigen::Vector2d controller_output(const Controller& ctrl);

}  // namespace phsim
