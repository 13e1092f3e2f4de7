#include "phsim/quadrature.hpp"

namespace phsim {

Eigen::VectorXd trapezoid_weights(const Grid1D& g) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(g.n, g.spacing);
  w[0] *= 0.5;
  w[g.n - 1] *= 0.5;
  return w;
}

Eigen::VectorXd trapezoid_weights(const Grid2D& g) {
  Eigen::VectorXd w1 = Eigen::VectorXd::Constant(g.n1, g.h1);
  w1[0] *= 0.5;
  w1[g.n1 - 1] *= 0.5;
  Eigen::VectorXd w2 = Eigen::VectorXd::Constant(g.n2, g.h2);
  w2[0] *= 0.5;
  w2[g.n2 - 1] *= 0.5;

  Eigen::VectorXd w(g.node_count());
  for (int j = 0; j < g.n2; ++j) {
    for (int i = 0; i < g.n1; ++i) {
      w[g.index(i, j)] = w1[i] * w2[j];
    }
  }
  return w;
}

double integrate(const Field1D& f) {
  f.require_finite("integrate");
  return trapezoid_weights(f.grid()).dot(f.values());
}

double integrate(const Field2D& f) {
  f.require_finite("integrate");
  return trapezoid_weights(f.grid()).dot(f.values());
}

}  // namespace phsim
