#include "phsim/plant_core.hpp"

namespace phsim {

double plant_hamiltonian(const PlantCore& core, const Eigen::VectorXd& w,
                         const Eigen::VectorXd& p) {
  const double elastic = 0.5 * w.dot(core.Kel * w);
  const double kinetic =
      0.5 * (core.weights.array() * p.array().square() * core.inv_mass.array())
                .sum();
  return elastic + kinetic;
}

double plant_elastic_energy(const PlantCore& core, const Eigen::VectorXd& w) {
  return 0.5 * w.dot(core.Kel * w);
}

void plant_core_rhs(const PlantCore& core, const double* w, const double* p,
                    const std::array<double, 2>& u, double* dw, double* dp) {
  const int N = core.N;
  core.force.apply(w, dp);
  const double* im = core.inv_mass.data();
  const double* g0 = core.gcol[0].data();
  const double* g1 = core.gcol[1].data();
  const double u0 = u[0], u1 = u[1];
  for (int i = 0; i < N; ++i) {
    dw[i] = p[i] * im[i];
    dp[i] += u0 * g0[i] + u1 * g1[i];
  }
}

std::array<double, 2> plant_core_outputs(const PlantCore& core,
                                         const Eigen::VectorXd& p) {
  std::array<double, 2> y{0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    y[k] = (core.port_vec[k].array() * p.array() * core.inv_mass.array()).sum();
  }
  return y;
}

}  // namespace phsim
