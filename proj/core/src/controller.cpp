#include "phsim/controller.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace phsim {

void Controller::validate() const {
  const double jscale = std::max(1.0, Jc.cwiseAbs().maxCoeff());
  if (((Jc + Jc.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * jscale) {
    throw std::invalid_argument("Controller: Jc must be skew-symmetric");
  }
  const double rscale = std::max(1.0, Rc.cwiseAbs().maxCoeff());
  if (((Rc - Rc.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * rscale) {
    throw std::invalid_argument("Controller: Rc must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> res(Rc);
  if (res.eigenvalues().minCoeff() < -1e-12 * rscale) {
    throw std::invalid_argument(
        "Controller: Rc must be positive semidefinite");
  }
  if (ham.c1 <= 0.0 || ham.c2 <= 0.0) {
    throw std::invalid_argument("Controller: c1 and c2 must be > 0");
  }
  const double mscale = std::max(1.0, ham.Mc.cwiseAbs().maxCoeff());
  if (((ham.Mc - ham.Mc.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * mscale) {
    throw std::invalid_argument("Controller: Mc must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> mes(ham.Mc);
  if (mes.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("Controller: Mc must be positive definite");
  }
}

double controller_hamiltonian(const ControllerHamiltonian& ham,
                              const Eigen::Vector4d& xc) {
  const double e1 = xc[0] - ham.xcd[0] - ham.us[0] / ham.c1;
  const double e2 = xc[1] - ham.xcd[1] - ham.us[1] / ham.c2;
  const Eigen::Vector2d x34(xc[2], xc[3]);
  return 0.5 * ham.c1 * e1 * e1 + 0.5 * ham.c2 * e2 * e2 +
         0.5 * x34.dot(ham.Mc * x34);
}

Eigen::Vector4d grad_Hc(const ControllerHamiltonian& ham,
                        const Eigen::Vector4d& xc) {
  Eigen::Vector4d g;
  g[0] = ham.c1 * (xc[0] - ham.xcd[0]) - ham.us[0];
  g[1] = ham.c2 * (xc[1] - ham.xcd[1]) - ham.us[1];
  const Eigen::Vector2d m = ham.Mc * Eigen::Vector2d(xc[2], xc[3]);
  g[2] = m[0];
  g[3] = m[1];
  return g;
}

Eigen::Vector4d controller_rhs(const Controller& ctrl,
                               const Eigen::Vector2d& uc) {
  return (ctrl.Jc - ctrl.Rc) * grad_Hc(ctrl.ham, ctrl.xc) + ctrl.Gc * uc;
}

Eigen::Vector2d controller_output(const Controller& ctrl) {
  return ctrl.Gc.transpose() * grad_Hc(ctrl.ham, ctrl.xc);
}

}  // namespace phsim
