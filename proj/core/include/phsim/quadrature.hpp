#pragma once

#include <Eigen/Core>

#include "phsim/field.hpp"

namespace phsim {

/// Composite trapezoid weights: h at interior nodes, h/2 at the ends, tensor
/// product of the per-axis weights in 2D (node-ordered like Field2D storage).
Eigen::VectorXd trapezoid_weights(const Grid1D& g);
Eigen::VectorXd trapezoid_weights(const Grid2D& g);

/// Composite trapezoid quadrature of a nodal field.
double integrate(const Field1D& f);
double integrate(const Field2D& f);

}  // namespace phsim
