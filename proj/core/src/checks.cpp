#include "phsim/checks.hpp"

#include <cmath>

#include "phsim/variational.hpp"

namespace phsim {

namespace {

// Vanishes to second order at z = 0 and z = 1, so boundary traces of the
// value and the normal slope are zero while the closure stencils still see
// nontrivial data.
double bump(double z) {
  const double q = z * (1.0 - z);
  return q * q;
}

GradientCheck gradient_from_energy_2d(const QuadraticDensity2D& d,
                                      const Eigen::VectorXd& weights,
                                      const Field2D& w) {
  const Grid2D& grid = w.grid();
  const Field2D p(grid);
  const Field2D v = var_deriv_w_2d(d, w);
  const double delta =
      1e-6 * std::max(1.0, w.values().cwiseAbs().maxCoeff());

  GradientCheck check;
  check.tolerance = 5.0 * std::max(grid.h1, grid.h2);
  Field2D probe = w;
  for (int j = 4; j < grid.n2 - 4; ++j) {
    for (int i = 4; i < grid.n1 - 4; ++i) {
      probe(i, j) = w(i, j) + delta;
      const double e_plus = quadrature_energy(d, probe, p);
      probe(i, j) = w(i, j) - delta;
      const double e_minus = quadrature_energy(d, probe, p);
      probe(i, j) = w(i, j);
      const double fd =
          (e_plus - e_minus) / (2.0 * delta) / weights[grid.index(i, j)];
      check.max_deviation =
          std::max(check.max_deviation, std::abs(fd - v(i, j)));
    }
  }
  check.pass = check.max_deviation <= check.tolerance;
  return check;
}

GradientCheck gradient_from_energy_1d(const QuadraticDensity1D& d,
                                      const Eigen::VectorXd& weights,
                                      const Field1D& w) {
  const Grid1D& grid = w.grid();
  const Field1D p(grid);
  const Field1D v = var_deriv_w_1d(d, w);
  const double delta =
      1e-6 * std::max(1.0, w.values().cwiseAbs().maxCoeff());

  GradientCheck check;
  check.tolerance = 5.0 * grid.spacing;
  Field1D probe = w;
  for (int i = 4; i < grid.n - 4; ++i) {
    probe[i] = w[i] + delta;
    const double e_plus = quadrature_energy(d, probe, p);
    probe[i] = w[i] - delta;
    const double e_minus = quadrature_energy(d, probe, p);
    probe[i] = w[i];
    const double fd = (e_plus - e_minus) / (2.0 * delta) / weights[i];
    check.max_deviation = std::max(check.max_deviation, std::abs(fd - v[i]));
  }
  check.pass = check.max_deviation <= check.tolerance;
  return check;
}

DecompositionResult decomposition_sample_2d(int n) {
  const Grid2D grid{n, n, 1.0, 1.0};
  Field2D mu(grid), Xi(grid), w(grid), p(grid), vw(grid), vp(grid);
  for (int j = 0; j < n; ++j) {
    const double z2 = grid.z2(j);
    for (int i = 0; i < n; ++i) {
      const double z1 = grid.z1(i);
      const double b = bump(z1) * bump(z2);
      mu(i, j) = 1.0 + 0.2 * z1 * z2;
      Xi(i, j) = 1.0 + 0.3 * std::sin(2.0 * z1) * std::cos(1.5 * z2);
      w(i, j) = b * std::sin(3.0 * z1 + 1.0) * std::cos(2.0 * z2 + 0.5);
      p(i, j) = b * (0.7 + std::cos(2.0 * z1) * (1.0 + z2));
      vw(i, j) = b * std::sin(2.0 * z1 + 0.7) * std::cos(3.0 * z2);
      vp(i, j) = b * (0.5 + std::sin(z1 + z2));
    }
  }
  const QuadraticDensity2D d(mu, Xi, 0.25);
  return decomposition_check(d, w, p, vw, vp);
}

DecompositionResult decomposition_sample_1d(int n) {
  const Grid1D grid{n, 1.0};
  Field1D rhoA(grid), EI(grid), w(grid), p(grid), vw(grid), vp(grid);
  for (int i = 0; i < n; ++i) {
    const double z = grid.node(i);
    const double b = bump(z);
    rhoA[i] = 1.0 + 0.3 * z * z;
    EI[i] = 1.0 + 0.4 * std::sin(2.0 * z);
    w[i] = b * std::sin(3.0 * z + 0.4);
    p[i] = b * (0.8 + std::cos(2.5 * z));
    vw[i] = b * std::sin(2.0 * z + 0.9);
    vp[i] = b * (0.6 + std::sin(1.5 * z));
  }
  const QuadraticDensity1D d(rhoA, EI);
  return decomposition_check(d, w, p, vw, vp);
}

SlopeCheck slope_from(const DecompositionResult& coarse,
                      const DecompositionResult& fine) {
  SlopeCheck check;
  check.residual_coarse = coarse.residual;
  check.residual_fine = fine.residual;
  check.floor = 1e-13 * std::max(1.0, std::abs(fine.rate_chain));
  if (check.residual_fine > 0.0) {
    check.slope = std::log2(check.residual_coarse / check.residual_fine);
  }
  check.pass = check.slope >= 1.9 && check.residual_fine > check.floor;
  return check;
}

}  // namespace

GradientCheck gradient_consistency_plate(int n) {
  const Grid2D grid{n, n, 1.0, 1.0};
  const PlatePlant plant(grid, PlateParams{});
  Field2D w(grid);
  for (int j = 0; j < n; ++j) {
    const double z2 = grid.z2(j);
    for (int i = 0; i < n; ++i) {
      const double z1 = grid.z1(i);
      w(i, j) = std::sin(2.3 * z1 + 0.4) * std::cos(1.7 * z2) +
                0.5 * z1 * z1 * z2;
    }
  }
  return gradient_from_energy_2d(plant.density(), plant.core().weights, w);
}

GradientCheck gradient_consistency_beam(int n) {
  const Grid1D grid{n, 1.0};
  const BeamPlant plant(grid, BeamParams{});
  Field1D w(grid);
  for (int i = 0; i < n; ++i) {
    const double z = grid.node(i);
    w[i] = std::sin(2.1 * z + 0.3) + 0.4 * z * z * z;
  }
  return gradient_from_energy_1d(plant.density(), plant.core().weights, w);
}

SlopeCheck decomposition_convergence_1d() {
  return slope_from(decomposition_sample_1d(21), decomposition_sample_1d(41));
}

SlopeCheck decomposition_convergence_2d() {
  return slope_from(decomposition_sample_2d(21), decomposition_sample_2d(41));
}

PowerCheck power_identity_plate() {
  const Grid2D grid{21, 21, 1.0, 1.0};
  PlatePlant plant(grid, PlateParams{});
  PowerCheck check;
  for (int k = 0; k < 3; ++k) {
    Field2D w(grid), p(grid);
    for (int j = 0; j < grid.n2; ++j) {
      const double z2 = grid.z2(j);
      for (int i = 0; i < grid.n1; ++i) {
        const double z1 = grid.z1(i);
        w(i, j) = 0.01 * z1 * z1 * std::sin((1.3 + k) * z1 + 0.2 * k) *
                  std::cos((0.8 + 0.5 * k) * z2);
        p(i, j) = 0.02 * z1 * std::cos((1.1 + 0.3 * k) * z1) *
                  std::sin((1.4 + 0.2 * k) * z2 + 0.3);
      }
    }
    plant.set_state(w, p);
    const std::array<double, 2> u{0.7 + 0.1 * k, -0.4 + 0.05 * k};
    const auto [dw, dp] = plate_rhs(plant, u);

    const PlantCore& core = plant.core();
    double rate = (core.Kel * plant.w().values()).dot(dw.values());
    rate += (core.weights.array() * dp.values().array() *
             plant.p().values().array() * core.inv_mass.array())
                .sum();
    const std::array<double, 2> y = plant_core_outputs(core, plant.p().values());
    const double injected = u[0] * y[0] + u[1] * y[1];
    const double denom =
        std::max({std::abs(rate), std::abs(injected), 1e-12});
    check.max_rel_error =
        std::max(check.max_rel_error, std::abs(rate - injected) / denom);
  }
  check.pass = check.max_rel_error <= 1e-8;
  return check;
}

PowerCheck power_identity_beam() {
  const Grid1D grid{21, 1.0};
  BeamPlant plant(grid, BeamParams{});
  PowerCheck check;
  for (int k = 0; k < 3; ++k) {
    Field1D w(grid), p(grid);
    for (int i = 0; i < grid.n; ++i) {
      const double z = grid.node(i);
      w[i] = 0.01 * std::sin((2.0 + 0.4 * k) * z + 0.1 * k) + 0.005 * z * z;
      p[i] = 0.02 * std::cos((1.5 + 0.3 * k) * z) + 0.004 * z;
    }
    plant.set_state(w, p);
    const std::array<double, 2> u{0.6 - 0.1 * k, 0.3 + 0.2 * k};
    const auto [dw, dp] = beam_rhs(plant, u);

    const PlantCore& core = plant.core();
    double rate = (core.Kel * plant.w().values()).dot(dw.values());
    rate += (core.weights.array() * dp.values().array() *
             plant.p().values().array() * core.inv_mass.array())
                .sum();
    const double injected = u[0] * dw[plant.actuation_node(1)] +
                            u[1] * dw[plant.actuation_node(2)];
    const double denom =
        std::max({std::abs(rate), std::abs(injected), 1e-12});
    check.max_rel_error =
        std::max(check.max_rel_error, std::abs(rate - injected) / denom);
  }
  check.pass = check.max_rel_error <= 1e-8;
  return check;
}

}  // namespace phsim
