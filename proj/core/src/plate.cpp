#include "phsim/plate.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "phsim/quadrature.hpp"

namespace phsim {

namespace {

struct StencilEntry {
  int node;
  double coef;
};
using Row = std::vector<StencilEntry>;

void add_outer(std::vector<Eigen::Triplet<double>>& trips, const Row& a,
               const Row& b, double c) {
  for (const StencilEntry& ea : a) {
    for (const StencilEntry& eb : b) {
      trips.emplace_back(ea.node, eb.node, c * ea.coef * eb.coef);
    }
  }
}

QuadraticDensity2D assemble_density(const Grid2D& grid,
                                    const PlateParams& params) {
  if (params.rho_c_h_c <= 0.0 || params.E_c_I_c <= 0.0) {
    throw std::invalid_argument("PlatePlant: carrier parameters must be > 0");
  }
  if (params.piezo.rho_p_h_p < 0.0 || params.piezo.Xi_p < 0.0) {
    throw std::invalid_argument("PlatePlant: patch parameters must be >= 0");
  }
  params.geometry.validate(grid);

  Field2D gamma_sum(grid);
  for (int k = 1; k <= 2; ++k) {
    const Field2D gk = characteristic_function(
        params.geometry, k, grid, PatchProfile::Smooth, params.piezo.sigma);
    gamma_sum.values() += gk.values();
  }
  Field2D mu(grid), Xi(grid);
  mu.values() = params.rho_c_h_c +
                (2.0 * params.piezo.rho_p_h_p * gamma_sum.values().array());
  Xi.values() =
      params.E_c_I_c + (2.0 * params.piezo.Xi_p * gamma_sum.values().array());
  return QuadraticDensity2D(std::move(mu), std::move(Xi), params.nu);
}

}  // namespace

PlatePlant::PlatePlant(const Grid2D& grid, const PlateParams& params)
    : grid_(grid),
      params_(params),
      density_(assemble_density(grid, params)),
      w_(grid),
      p_(grid) {
  if (!sigma_resolved(params.piezo.sigma, grid)) {
    std::fprintf(stderr,
                 "warning: patch smoothing sigma * max(h1, h2) = %.3g exceeds "
                 "4; the tanh transition is under-resolved on this grid\n",
                 params.piezo.sigma * std::max(grid.h1, grid.h2));
  }

  const int n1 = grid.n1, n2 = grid.n2;
  const int N = grid.node_count();
  core_.n1 = n1;
  core_.n2 = n2;
  core_.N = N;
  core_.weights = trapezoid_weights(grid);
  core_.inv_mass = density_.mu.values().cwiseInverse();
  for (int j = 0; j < n2; ++j) core_.pinned.push_back(grid.index(0, j));

  for (int k = 1; k <= 2; ++k) {
    Field2D lambda = input_distribution(params.geometry, k, params.piezo, grid);
    g2_[k - 1] = Field2D(grid);
    g2_[k - 1].values() = -lambda.values();
    for (int j = 0; j < n2; ++j) g2_[k - 1](0, j) = 0.0;
    core_.gcol[k - 1] = g2_[k - 1].values();
    core_.port_vec[k - 1] =
        core_.weights.cwiseProduct(g2_[k - 1].values());
  }

  // Elastic energy: trapezoid-weighted curvature samples. The z1 curvature is
  // sampled for i <= n1 - 2 (at i = 0 through the clamped mirror extension),
  // the z2 curvature for 1 <= j <= n2 - 2 and the twist on the full interior;
  // the free edges carry no curvature samples of their own, which realizes
  // the vanishing-moment conditions variationally.
  const double ih1sq = 1.0 / (grid.h1 * grid.h1);
  const double ih2sq = 1.0 / (grid.h2 * grid.h2);
  const double icross = 1.0 / (4.0 * grid.h1 * grid.h2);
  const double nu = params.nu;
  auto idx = [&grid](int i, int j) { return grid.index(i, j); };
  auto row20 = [&](int i, int j) -> Row {
    if (i == 0) {
      return {{idx(0, j), -2.0 * ih1sq}, {idx(1, j), 2.0 * ih1sq}};
    }
    return {{idx(i - 1, j), ih1sq},
            {idx(i, j), -2.0 * ih1sq},
            {idx(i + 1, j), ih1sq}};
  };
  auto row02 = [&](int i, int j) -> Row {
    return {{idx(i, j - 1), ih2sq},
            {idx(i, j), -2.0 * ih2sq},
            {idx(i, j + 1), ih2sq}};
  };
  auto row11 = [&](int i, int j) -> Row {
    return {{idx(i + 1, j + 1), icross},
            {idx(i - 1, j - 1), icross},
            {idx(i + 1, j - 1), -icross},
            {idx(i - 1, j + 1), -icross}};
  };
  auto sample_coef = [&](int i, int j) {
    const int s = idx(i, j);
    return core_.weights[s] * density_.Xi.values()[s];
  };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(N) * 32);
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i <= n1 - 2; ++i) {
      const Row a = row20(i, j);
      add_outer(trips, a, a, sample_coef(i, j));
    }
  }
  for (int j = 1; j <= n2 - 2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const Row b = row02(i, j);
      add_outer(trips, b, b, sample_coef(i, j));
    }
  }
  for (int j = 1; j <= n2 - 2; ++j) {
    for (int i = 1; i <= n1 - 2; ++i) {
      const Row c = row11(i, j);
      add_outer(trips, c, c, 2.0 * (1.0 - nu) * sample_coef(i, j));
    }
  }
  for (int j = 1; j <= n2 - 2; ++j) {
    for (int i = 0; i <= n1 - 2; ++i) {
      const Row a = row20(i, j);
      const Row b = row02(i, j);
      const double c = nu * sample_coef(i, j);
      add_outer(trips, a, b, c);
      add_outer(trips, b, a, c);
    }
  }
  core_.Kel.resize(N, N);
  core_.Kel.setFromTriplets(trips.begin(), trips.end());

  std::vector<char> is_pinned(N, 0);
  for (int r : core_.pinned) is_pinned[r] = 1;
  std::vector<Eigen::Triplet<double>> ftrips;
  ftrips.reserve(core_.Kel.nonZeros());
  for (int outer = 0; outer < core_.Kel.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(core_.Kel, outer); it;
         ++it) {
      const int r = static_cast<int>(it.row());
      if (is_pinned[r]) continue;
      ftrips.emplace_back(r, static_cast<int>(it.col()),
                          -it.value() / core_.weights[r]);
    }
  }
  Eigen::SparseMatrix<double> F(N, N);
  F.setFromTriplets(ftrips.begin(), ftrips.end());
  core_.force = StencilTable::from_sparse(F, n1, n2);

  core_.omega_max =
      std::sqrt(density_.Xi.values().maxCoeff() /
                density_.mu.values().minCoeff()) *
      (4.0 * ih1sq + 4.0 * ih2sq);
}

const Field2D& PlatePlant::g2(int k) const {
  if (k != 1 && k != 2) {
    throw std::invalid_argument("PlatePlant::g2: channel must be 1 or 2");
  }
  return g2_[k - 1];
}

void PlatePlant::set_state(const Field2D& w, const Field2D& p) {
  require_same_grid(w, w_, "PlatePlant::set_state");
  require_same_grid(p, p_, "PlatePlant::set_state");
  w.require_finite("PlatePlant::set_state w");
  p.require_finite("PlatePlant::set_state p");
  w_ = w;
  p_ = p;
  apply_bcs(*this, w_, p_);
}

void apply_bcs(const PlatePlant& plant, Field2D& w, Field2D& p) {
  const Grid2D& g = plant.grid();
  for (int j = 0; j < g.n2; ++j) {
    w(0, j) = 0.0;
    p(0, j) = 0.0;
  }
}

std::pair<Field2D, Field2D> plate_rhs(const PlatePlant& plant,
                                      const std::array<double, 2>& u) {
  plant.w().require_finite("plate_rhs w");
  plant.p().require_finite("plate_rhs p");
  Field2D dw(plant.grid()), dp(plant.grid());
  plant_core_rhs(plant.core(), plant.w().values().data(),
                 plant.p().values().data(), u, dw.values().data(),
                 dp.values().data());
  return {std::move(dw), std::move(dp)};
}

std::pair<Field2D, Field2D> plate_outputs(const PlatePlant& plant) {
  Field2D y1(plant.grid()), y2(plant.grid());
  const Eigen::VectorXd wdot =
      plant.p().values().cwiseProduct(plant.core().inv_mass);
  y1.values() = plant.g2(1).values().cwiseProduct(wdot);
  y2.values() = plant.g2(2).values().cwiseProduct(wdot);
  return {std::move(y1), std::move(y2)};
}

double hamiltonian(const PlatePlant& plant) {
  return plant_hamiltonian(plant.core(), plant.w().values(),
                           plant.p().values());
}

ModeEstimate2D plate_fundamental_state(const PlatePlant& plant,
                                       double amplitude) {
  const PlantCore& core = plant.core();
  const int N = core.N;
  std::vector<char> is_pinned(N, 0);
  for (int r : core.pinned) is_pinned[r] = 1;
  std::vector<int> to_reduced(N, -1);
  std::vector<int> to_full;
  to_full.reserve(N);
  for (int i = 0; i < N; ++i) {
    if (!is_pinned[i]) {
      to_reduced[i] = static_cast<int>(to_full.size());
      to_full.push_back(i);
    }
  }
  const int Nf = static_cast<int>(to_full.size());

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(core.Kel.nonZeros());
  for (int outer = 0; outer < core.Kel.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(core.Kel, outer); it;
         ++it) {
      const int r = to_reduced[static_cast<int>(it.row())];
      const int c = to_reduced[static_cast<int>(it.col())];
      if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  Eigen::SparseMatrix<double> Kff(Nf, Nf);
  Kff.setFromTriplets(trips.begin(), trips.end());

  Eigen::VectorXd mass_f(Nf);
  const Eigen::VectorXd mass =
      core.weights.cwiseProduct(plant.density().mu.values());
  for (int i = 0; i < Nf; ++i) mass_f[i] = mass[to_full[i]];

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(Kff);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error(
        "plate_fundamental_state: stiffness factorization failed");
  }
  Eigen::VectorXd x = Eigen::VectorXd::Ones(Nf);
  for (int it = 0; it < 2; ++it) {
    x = llt.solve(mass_f.cwiseProduct(x));
    x /= x.norm();
  }
  const double num = x.dot(Kff * x);
  const double den = x.dot(mass_f.cwiseProduct(x));
  ModeEstimate2D out{Field2D(plant.grid()), std::sqrt(num / den)};
  for (int i = 0; i < Nf; ++i) out.shape.values()[to_full[i]] = x[i];
  const double peak = out.shape.values().cwiseAbs().maxCoeff();
  if (peak > 0.0) out.shape.values() *= amplitude / peak;
  return out;
}

}  // namespace phsim
