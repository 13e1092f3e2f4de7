#include "phsim/casimir.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "phsim/csv.hpp"
#include "phsim/variational.hpp"

namespace phsim {

namespace {

constexpr double kAlgebraicTol = 1e-12;

/// The patch distribution fields are built from tanh transitions, so their
/// free-edge traces are exponentially small but never exactly zero: with the
/// default sigma = 100 and a 0.1 footprint-to-edge gap the tail contributes
/// about 1e-4 * sigma^2 * sech^2(sigma * gap) in absolute terms, a few times
/// 1e-5 of the sampled field maximum. The edge-trace row therefore carries a
/// resolution-dependent admissibility tolerance instead of the algebraic one.
constexpr double kEdgeTraceTol = 1e-4;

ResidualRow make_row(const char* condition, double norm, double tolerance) {
  return ResidualRow{condition, norm, tolerance, norm <= tolerance};
}

void require_nonsingular(const Eigen::Matrix2d& K) {
  const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  if (std::abs(K.determinant()) <= 1e-14 * scale * scale) {
    throw std::invalid_argument("CasimirSpec: K must be nonsingular");
  }
}

ResidualRow controller_rows_row(const Controller& ctrl) {
  const Eigen::Matrix4d A = ctrl.Jc - ctrl.Rc;
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double norm = A.topRows<2>().cwiseAbs().maxCoeff() / scale;
  return make_row("controller_rows", norm, kAlgebraicTol);
}

ResidualRow gram_rank_row(const Eigen::Matrix2d& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
  const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
  int rank = 0;
  for (int i = 0; i < 2; ++i) {
    if (es.eigenvalues()[i] > 1e-10 * std::max(top, 1e-30)) ++rank;
  }
  return make_row("gram_rank", 2.0 - rank, 0.5);
}

// The candidate densities carry no momentum coefficient field, so the
// contraction of that coefficient with anything vanishes; the rows evaluate
// the contractions literally on the zero field to keep the report complete.
ResidualRow momentum_coefficient_row(const Eigen::VectorXd& delta_p_C) {
  return make_row("momentum_coefficient", delta_p_C.cwiseAbs().maxCoeff(),
                  kAlgebraicTol);
}

ResidualRow input_channel_pairing_row(
    const Eigen::VectorXd& delta_p_C,
    const std::array<Eigen::VectorXd, 2>& gcol, const Eigen::VectorXd& weights,
    const Eigen::Matrix2d& K, const Eigen::Matrix<double, 4, 2>& Gc) {
  Eigen::Vector2d coef;
  for (int xi = 0; xi < 2; ++xi) {
    coef[xi] = (weights.array() * delta_p_C.array() * gcol[xi].array()).sum();
  }
  const Eigen::Matrix<double, 1, 4> contraction =
      coef.transpose() * K * Gc.transpose();
  const double scale =
      std::max(1.0, (K * Gc.transpose()).cwiseAbs().maxCoeff());
  return make_row("input_channel_pairing",
                  contraction.cwiseAbs().maxCoeff() / scale, kAlgebraicTol);
}

}  // namespace

bool ResidualReport::all_pass() const {
  for (const ResidualRow& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

void write_residual_report_csv(const ResidualReport& report,
                               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_residual_report_csv: cannot open " + path);
  }
  const int prec = csv_precision();
  out << "condition,norm,tolerance,pass\n";
  for (const ResidualRow& r : report.rows) {
    out << r.condition << ',' << format_csv_value(r.norm, prec) << ','
        << format_csv_value(r.tolerance, prec) << ',' << (r.pass ? 1 : 0)
        << '\n';
  }
}

ResidualReport casimir_residuals_prop1(const PlatePlant& plant,
                                       const Controller& ctrl,
                                       const CasimirSpec2D& spec) {
  require_same_grid(spec.gamma[0], plant.density().mu, "casimir prop1 gamma1");
  require_same_grid(spec.gamma[1], plant.density().mu, "casimir prop1 gamma2");
  require_nonsingular(spec.K);

  const Grid2D& grid = plant.grid();
  const int N = grid.node_count();
  const double gscale = std::max(
      {spec.gamma[0].values().cwiseAbs().maxCoeff(),
       spec.gamma[1].values().cwiseAbs().maxCoeff(), 1e-30});

  ResidualReport report;
  report.rows.push_back(controller_rows_row(ctrl));

  const Eigen::Matrix<double, 4, 2> GK = ctrl.Gc * spec.K;
  double match_norm = 0.0;
  for (int lam = 0; lam < 2; ++lam) {
    Eigen::VectorXd r = spec.gamma[lam].values();
    for (int eta = 0; eta < 2; ++eta) {
      r += GK(lam, eta) * plant.g2(eta + 1).values();
    }
    match_norm = std::max(match_norm, r.cwiseAbs().maxCoeff());
  }
  report.rows.push_back(
      make_row("gamma_input_match", match_norm / gscale, kAlgebraicTol));

  const Eigen::VectorXd delta_p_C = Eigen::VectorXd::Zero(N);
  report.rows.push_back(momentum_coefficient_row(delta_p_C));
  report.rows.push_back(input_channel_pairing_row(
      delta_p_C, plant.core().gcol, plant.core().weights, spec.K, ctrl.Gc));

  double shear_norm = 0.0, moment_norm = 0.0, edge_norm = 0.0;
  const Edge all_edges[4] = {Edge::B1, Edge::B2, Edge::B3, Edge::B4};
  const Edge free_edges[3] = {Edge::B2, Edge::B3, Edge::B4};
  for (int lam = 0; lam < 2; ++lam) {
    LinearDensity2D c(grid);
    c.a0 = spec.gamma[lam];
    for (Edge e : all_edges) {
      const BoundaryData2D traces = boundary_ops_2d(c, e);
      shear_norm = std::max(shear_norm, traces.shear.cwiseAbs().maxCoeff());
      moment_norm = std::max(moment_norm, traces.moment.cwiseAbs().maxCoeff());
    }
    for (Edge e : free_edges) {
      edge_norm = std::max(
          edge_norm,
          boundary_trace(spec.gamma[lam], e).cwiseAbs().maxCoeff());
    }
  }
  report.rows.push_back(
      make_row("boundary_shear_trace", shear_norm / gscale, kAlgebraicTol));
  report.rows.push_back(
      make_row("boundary_moment_trace", moment_norm / gscale, kAlgebraicTol));
  report.rows.push_back(
      make_row("gamma_free_edge_trace", edge_norm / gscale, kEdgeTraceTol));

  Eigen::Matrix2d gram;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      gram(a, b) = (plant.core().weights.array() *
                    spec.gamma[a].values().array() *
                    spec.gamma[b].values().array())
                       .sum();
    }
  }
  report.rows.push_back(gram_rank_row(gram));
  return report;
}

ResidualReport casimir_residuals_prop2(const BeamPlant& plant,
                                       const Controller& ctrl,
                                       const CasimirSpec1D& spec) {
  require_same_grid(spec.gamma[0], plant.density().rhoA,
                    "casimir prop2 gamma1");
  require_same_grid(spec.gamma[1], plant.density().rhoA,
                    "casimir prop2 gamma2");
  require_nonsingular(spec.K);

  const Grid1D& grid = plant.grid();
  const int n = grid.n;
  const int nodes[2] = {plant.actuation_node(1), plant.actuation_node(2)};
  const Eigen::VectorXd& weights = plant.core().weights;
  const double gscale = std::max(
      {spec.gamma[0].values().cwiseAbs().maxCoeff(),
       spec.gamma[1].values().cwiseAbs().maxCoeff(), 1e-30});

  ResidualReport report;
  report.rows.push_back(controller_rows_row(ctrl));

  double off_norm = 0.0;
  for (int lam = 0; lam < 2; ++lam) {
    for (int i = 0; i < n; ++i) {
      if (i == nodes[0] || i == nodes[1]) continue;
      off_norm = std::max(off_norm, std::abs(spec.gamma[lam][i]));
    }
  }
  report.rows.push_back(
      make_row("offsupport_gamma", off_norm / gscale, kAlgebraicTol));

  const Eigen::Matrix<double, 4, 2> GK = ctrl.Gc * spec.K;
  const double pair_scale =
      std::max(1.0, GK.topRows<2>().cwiseAbs().maxCoeff());
  double pair_norm = 0.0;
  for (int lam = 0; lam < 2; ++lam) {
    for (int eta = 0; eta < 2; ++eta) {
      const double r =
          GK(lam, eta) + weights[nodes[eta]] * spec.gamma[lam][nodes[eta]];
      pair_norm = std::max(pair_norm, std::abs(r));
    }
  }
  report.rows.push_back(
      make_row("actuation_pairing", pair_norm / pair_scale, kAlgebraicTol));

  const Eigen::VectorXd delta_p_C = Eigen::VectorXd::Zero(n);
  report.rows.push_back(momentum_coefficient_row(delta_p_C));
  report.rows.push_back(input_channel_pairing_row(
      delta_p_C, plant.core().gcol, weights, spec.K, ctrl.Gc));

  double shear_norm = 0.0, moment_norm = 0.0, end_norm = 0.0;
  for (int lam = 0; lam < 2; ++lam) {
    LinearDensity1D c(grid);
    c.a0 = spec.gamma[lam];
    const BoundaryData1D traces = boundary_ops_1d(c);
    shear_norm = std::max({shear_norm, std::abs(traces.start.shear),
                           std::abs(traces.end.shear)});
    moment_norm = std::max({moment_norm, std::abs(traces.start.moment),
                            std::abs(traces.end.moment)});
    end_norm = std::max({end_norm, std::abs(spec.gamma[lam][0]),
                         std::abs(spec.gamma[lam][n - 1])});
  }
  report.rows.push_back(
      make_row("boundary_shear_trace", shear_norm / gscale, kAlgebraicTol));
  report.rows.push_back(
      make_row("boundary_moment_trace", moment_norm / gscale, kAlgebraicTol));
  report.rows.push_back(
      make_row("gamma_end_values", end_norm / gscale, kAlgebraicTol));

  Eigen::Matrix2d gram;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      gram(a, b) = (weights.array() * spec.gamma[a].values().array() *
                    spec.gamma[b].values().array())
                       .sum();
    }
  }
  report.rows.push_back(gram_rank_row(gram));
  return report;
}

}  // namespace phsim
