#include "phsim/beam.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "phsim/quadrature.hpp"

namespace phsim {

namespace {

QuadraticDensity1D assemble_density(const Grid1D& grid,
                                    const BeamParams& params) {
  if (params.rhoA <= 0.0 || params.EI <= 0.0) {
    throw std::invalid_argument("BeamPlant: rhoA and EI must be > 0");
  }
  Field1D rhoA(grid), EI(grid);
  rhoA.values().setConstant(params.rhoA);
  EI.values().setConstant(params.EI);
  return QuadraticDensity1D(std::move(rhoA), std::move(EI));
}

int locate_node(const Grid1D& grid, double A, const char* name) {
  const int i = static_cast<int>(std::lround(A / grid.spacing));
  if (i < 0 || i >= grid.n ||
      std::abs(A - grid.node(i)) > 1e-9 * grid.length) {
    throw std::invalid_argument(std::string("BeamPlant: ") + name +
                                " does not coincide with a grid node");
  }
  if (i < 1 || i > grid.n - 2) {
    throw std::invalid_argument(std::string("BeamPlant: ") + name +
                                " must be strictly interior");
  }
  return i;
}

}  // namespace

BeamPlant::BeamPlant(const Grid1D& grid, const BeamParams& params)
    : grid_(grid),
      params_(params),
      density_(assemble_density(grid, params)),
      w_(grid),
      p_(grid) {
  node_[0] = locate_node(grid, params.A1, "A1");
  node_[1] = locate_node(grid, params.A2, "A2");
  if (node_[0] == node_[1]) {
    throw std::invalid_argument("BeamPlant: A1 and A2 must differ");
  }

  const int n = grid.n;
  core_.n1 = n;
  core_.n2 = 1;
  core_.N = n;
  core_.weights = trapezoid_weights(grid);
  core_.inv_mass = density_.rhoA.values().cwiseInverse();

  const double ihsq = 1.0 / (grid.spacing * grid.spacing);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(n) * 9);
  for (int s = 1; s <= n - 2; ++s) {
    const double c = core_.weights[s] * density_.EI.values()[s];
    const int nodes[3] = {s - 1, s, s + 1};
    const double coefs[3] = {ihsq, -2.0 * ihsq, ihsq};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        trips.emplace_back(nodes[a], nodes[b], c * coefs[a] * coefs[b]);
      }
    }
  }
  core_.Kel.resize(n, n);
  core_.Kel.setFromTriplets(trips.begin(), trips.end());

  std::vector<Eigen::Triplet<double>> ftrips;
  ftrips.reserve(core_.Kel.nonZeros());
  for (int outer = 0; outer < core_.Kel.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(core_.Kel, outer); it;
         ++it) {
      const int r = static_cast<int>(it.row());
      ftrips.emplace_back(r, static_cast<int>(it.col()),
                          -it.value() / core_.weights[r]);
    }
  }
  Eigen::SparseMatrix<double> F(n, n);
  F.setFromTriplets(ftrips.begin(), ftrips.end());
  core_.force = StencilTable::from_sparse(F, n, 1);

  for (int k = 0; k < 2; ++k) {
    core_.gcol[k] = Eigen::VectorXd::Zero(n);
    core_.gcol[k][node_[k]] = 1.0 / grid.spacing;
    core_.port_vec[k] = Eigen::VectorXd::Zero(n);
    core_.port_vec[k][node_[k]] = 1.0;
  }

  core_.omega_max = std::sqrt(density_.EI.values().maxCoeff() /
                              density_.rhoA.values().minCoeff()) *
                    4.0 * ihsq;
}

int BeamPlant::actuation_node(int k) const {
  if (k != 1 && k != 2) {
    throw std::invalid_argument("BeamPlant::actuation_node: k must be 1 or 2");
  }
  return node_[k - 1];
}

void BeamPlant::set_state(const Field1D& w, const Field1D& p) {
  require_same_grid(w, w_, "BeamPlant::set_state");
  require_same_grid(p, p_, "BeamPlant::set_state");
  w.require_finite("BeamPlant::set_state w");
  p.require_finite("BeamPlant::set_state p");
  w_ = w;
  p_ = p;
}

std::pair<Field1D, Field1D> beam_rhs(const BeamPlant& plant,
                                     const std::array<double, 2>& u) {
  plant.w().require_finite("beam_rhs w");
  plant.p().require_finite("beam_rhs p");
  Field1D dw(plant.grid()), dp(plant.grid());
  plant_core_rhs(plant.core(), plant.w().values().data(),
                 plant.p().values().data(), u, dw.values().data(),
                 dp.values().data());
  return {std::move(dw), std::move(dp)};
}

std::array<double, 2> beam_outputs(const BeamPlant& plant) {
  return plant_core_outputs(plant.core(), plant.p().values());
}

double hamiltonian(const BeamPlant& plant) {
  return plant_hamiltonian(plant.core(), plant.w().values(),
                           plant.p().values());
}

ModeEstimate1D beam_fundamental_state(const BeamPlant& plant,
                                      double amplitude) {
  const PlantCore& core = plant.core();
  const Grid1D& grid = plant.grid();
  const int n = core.N;

  // The stiffness is singular (rigid shapes a z + b), so the inverse
  // iteration runs on the mass-orthogonal complement of the rigid shapes via
  // an augmented saddle-point solve.
  const Eigen::VectorXd mass =
      core.weights.cwiseProduct(plant.density().rhoA.values());
  Eigen::MatrixXd C(2, n);
  for (int i = 0; i < n; ++i) {
    C(0, i) = mass[i];
    C(1, i) = mass[i] * grid.node(i);
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 2, n + 2);
  A.topLeftCorner(n, n) = Eigen::MatrixXd(core.Kel);
  A.topRightCorner(n, 2) = C.transpose();
  A.bottomLeftCorner(2, n) = C;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    throw std::runtime_error(
        "beam_fundamental_state: saddle-point system is singular");
  }

  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = grid.node(i) * grid.node(i);
  for (int it = 0; it < 2; ++it) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 2);
    rhs.head(n) = mass.cwiseProduct(x);
    x = lu.solve(rhs).head(n);
    x /= x.norm();
  }
  const double num = x.dot(core.Kel * x);
  const double den = x.dot(mass.cwiseProduct(x));
  ModeEstimate1D out{Field1D(grid), std::sqrt(num / den)};
  out.shape.values() = x;
  const double peak = out.shape.values().cwiseAbs().maxCoeff();
  if (peak > 0.0) out.shape.values() *= amplitude / peak;
  return out;
}

}  // namespace phsim
