#include "phsim/synthesis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "phsim/variational.hpp"

namespace phsim {

namespace {

Controller assemble_controller(const ControllerGains& gains) {
  Controller ctrl;
  ctrl.xc.setZero();

  ctrl.Jc.setZero();
  ctrl.Jc(2, 3) = gains.Jc34;
  ctrl.Jc(3, 2) = -gains.Jc34;

  ctrl.Rc.setZero();
  ctrl.Rc(2, 2) = gains.Rc33;
  ctrl.Rc(2, 3) = gains.Rc34;
  ctrl.Rc(3, 2) = gains.Rc34;
  ctrl.Rc(3, 3) = gains.Rc44;

  ctrl.Gc.setZero();
  ctrl.Gc(0, 0) = gains.coupling_rows_scale;
  ctrl.Gc(1, 1) = gains.coupling_rows_scale;
  ctrl.Gc(2, 0) = gains.Gc31;
  ctrl.Gc(2, 1) = gains.Gc32;
  ctrl.Gc(3, 0) = gains.Gc41;
  ctrl.Gc(3, 1) = gains.Gc42;

  ctrl.ham.c1 = gains.c1;
  ctrl.ham.c2 = gains.c2;
  ctrl.ham.Mc << gains.Mc33, gains.Mc34, gains.Mc34, gains.Mc44;
  ctrl.ham.xcd.setZero();
  ctrl.ham.us.setZero();
  return ctrl;
}

FeedforwardResult least_squares_feedforward(const Eigen::VectorXd& col1,
                                            const Eigen::VectorXd& col2,
                                            const Eigen::VectorXd& target,
                                            const std::vector<int>& nodes) {
  Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  double target_sq = 0.0;
  for (int i : nodes) {
    gram(0, 0) += col1[i] * col1[i];
    gram(0, 1) += col1[i] * col2[i];
    gram(1, 1) += col2[i] * col2[i];
    rhs[0] += col1[i] * target[i];
    rhs[1] += col2[i] * target[i];
    target_sq += target[i] * target[i];
  }
  gram(1, 0) = gram(0, 1);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
  const double top = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(top, 1e-30)) {
    throw std::invalid_argument(
        "compute_feedforward: input columns are rank deficient on the "
        "interior node set");
  }

  FeedforwardResult result;
  result.us = gram.ldlt().solve(rhs);
  double miss_sq = 0.0;
  for (int i : nodes) {
    const double miss = col1[i] * result.us[0] + col2[i] * result.us[1] -
                        target[i];
    miss_sq += miss * miss;
  }
  result.residual_norm =
      std::sqrt(miss_sq) / std::max(std::sqrt(target_sq), 1e-30);
  return result;
}

}  // namespace

ControllerGains plate_default_gains() {
  ControllerGains g;
  g.c1 = 0.1;
  g.c2 = 0.1;
  g.Jc34 = 1.0;
  g.Rc33 = 200.0;
  g.Rc34 = -1.0;
  g.Rc44 = 150.0;
  g.Mc33 = 1e4;
  g.Mc34 = 0.0;
  g.Mc44 = 1e4;
  g.Gc31 = 100.0;
  g.Gc32 = 0.0;
  g.Gc41 = 100.0;
  g.Gc42 = 0.0;
  return g;
}

ControllerGains beam_default_gains() {
  ControllerGains g;
  g.c1 = 4.0;
  g.c2 = 4.0;
  g.Jc34 = 0.0;
  g.Rc33 = 50.0;
  g.Rc34 = 0.0;
  g.Rc44 = 50.0;
  g.Mc33 = 10.0;
  g.Mc34 = 0.0;
  g.Mc44 = 10.0;
  g.Gc31 = 10.0;
  g.Gc32 = 0.0;
  g.Gc41 = 0.0;
  g.Gc42 = 10.0;
  return g;
}

Field2D desired_plate_shape(const PlatePlant& plant,
                            const PlateEquilibrium& eq) {
  const Grid2D& grid = plant.grid();
  const PatchGeometry& geom = plant.params().geometry;
  const double zb1 = geom.zp1 + geom.Lp1;
  Field2D wd(grid);
  for (int j = 0; j < grid.n2; ++j) {
    const double k = -eq.c + eq.d * grid.z2(j);
    for (int i = 0; i < grid.n1; ++i) {
      const double z1 = grid.z1(i);
      const double ramp = z1 < zb1 ? eq.a * z1 * z1
                                   : eq.b * (z1 - zb1) + eq.a * zb1 * zb1;
      wd(i, j) = ramp * k;
    }
  }
  return wd;
}

Field1D desired_beam_shape(const BeamPlant& plant, const BeamEquilibrium& eq) {
  const Grid1D& grid = plant.grid();
  Field1D wd(grid);
  for (int i = 0; i < grid.n; ++i) {
    wd[i] = eq.a * grid.node(i) + eq.b;
  }
  return wd;
}

FeedforwardResult compute_feedforward(const PlatePlant& plant,
                                      const Field2D& w_desired) {
  require_same_grid(w_desired, plant.g2(1), "compute_feedforward");
  const Grid2D& grid = plant.grid();
  const Field2D force = var_deriv_w_2d(plant.density(), w_desired);
  std::vector<int> nodes;
  nodes.reserve(static_cast<std::size_t>(grid.node_count()));
  for (int j = 1; j < grid.n2 - 1; ++j) {
    for (int i = 1; i < grid.n1 - 1; ++i) {
      nodes.push_back(grid.index(i, j));
    }
  }
  return least_squares_feedforward(plant.g2(1).values(), plant.g2(2).values(),
                                   force.values(), nodes);
}

FeedforwardResult compute_feedforward(const BeamPlant& plant,
                                      const Field1D& w_desired) {
  require_same_grid(w_desired, plant.density().rhoA, "compute_feedforward");
  const Grid1D& grid = plant.grid();
  const Field1D force = var_deriv_w_1d(plant.density(), w_desired);
  std::vector<int> nodes;
  nodes.reserve(static_cast<std::size_t>(grid.n - 2));
  for (int i = 1; i < grid.n - 1; ++i) nodes.push_back(i);
  return least_squares_feedforward(plant.core().gcol[0], plant.core().gcol[1],
                                   force.values(), nodes);
}

PlateSynthesis synthesize_plate_controller(const PlatePlant& plant,
                                           const ControllerGains& gains,
                                           const PlateEquilibrium& eq) {
  PlateSynthesis syn{assemble_controller(gains),
                    CasimirSpec2D{{Field2D(plant.grid()),
                                   Field2D(plant.grid())},
                                  Eigen::Matrix2d::Identity()},
                    desired_plate_shape(plant, eq)};

  const FeedforwardResult ff = compute_feedforward(plant, syn.w_desired);
  syn.us = ff.us;
  syn.feedforward_residual = ff.residual_norm;
  syn.controller.ham.us = ff.us;

  const Eigen::VectorXd& weights = plant.core().weights;
  for (int lam = 0; lam < 2; ++lam) {
    const Eigen::VectorXd& g = plant.g2(lam + 1).values();
    syn.spec.gamma[lam] =
        Field2D(plant.grid(), (-g.array()).matrix());
    syn.controller.ham.xcd[lam] =
        (weights.array() * g.array() * syn.w_desired.values().array()).sum();
    syn.controller.xc[lam] =
        (weights.array() * g.array() * plant.w().values().array()).sum();
  }
  syn.controller.xc[2] = 0.0;
  syn.controller.xc[3] = 0.0;

  syn.controller.validate();
  return syn;
}

BeamSynthesis synthesize_beam_controller(const BeamPlant& plant,
                                         const ControllerGains& gains,
                                         const BeamEquilibrium& eq) {
  BeamSynthesis syn{assemble_controller(gains),
                    CasimirSpec1D{{Field1D(plant.grid()),
                                   Field1D(plant.grid())},
                                  Eigen::Matrix2d::Identity()},
                    desired_beam_shape(plant, eq)};

  const double h = plant.grid().spacing;
  for (int lam = 0; lam < 2; ++lam) {
    const int node = plant.actuation_node(lam + 1);
    syn.spec.gamma[lam][node] = -1.0 / h;
    syn.controller.ham.xcd[lam] = syn.w_desired[node];
    syn.controller.xc[lam] = plant.w()[node];
  }
  syn.controller.xc[2] = 0.0;
  syn.controller.xc[3] = 0.0;

  syn.controller.validate();
  return syn;
}

}  // namespace phsim
