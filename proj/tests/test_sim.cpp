#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "doctest.h"
#include "phsim/beam.hpp"
#include "phsim/closed_loop.hpp"
#include "phsim/errors.hpp"
#include "phsim/plate.hpp"
#include "phsim/synthesis.hpp"

using namespace phsim;

namespace {

BeamPlant default_beam() {
  return BeamPlant(Grid1D(21, 1.0), BeamParams{});
}

PlatePlant default_plate() {
  return PlatePlant(Grid2D(21, 21, 1.0, 1.0), PlateParams{});
}

}  // namespace

TEST_CASE("stability limit follows the grid and material bounds") {
  const BeamPlant beam = default_beam();
  // h = 0.05, unit material data: omega_max = 4 / h^2 = 1600
  const double expected = 0.8 * 2.0 * std::sqrt(2.0) / 1600.0;
  CHECK(stability_dt(beam) == doctest::Approx(expected).epsilon(1e-13));

  const BeamPlant fine(Grid1D(41, 1.0), BeamParams{});
  CHECK(stability_dt(fine) / stability_dt(beam) ==
        doctest::Approx(0.25).epsilon(1e-12));

  const PlatePlant plate = default_plate();
  const double omega = plate.core().omega_max;
  CHECK(omega > 3200.0);
  CHECK(omega < 3200.0 * 1.7400);
  CHECK(stability_dt(plate) ==
        doctest::Approx(0.8 * 2.0 * std::sqrt(2.0) / omega).epsilon(1e-13));

  CHECK_THROWS_AS(stability_dt(beam, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(stability_dt(beam, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(stability_dt(beam, 1.5), std::invalid_argument);
  CHECK_NOTHROW(stability_dt(beam, 1.0));
}

TEST_CASE("port coupling reproduces the reference identity example") {
  const Eigen::Vector2d y{1.0, 2.0};
  const Eigen::Vector2d yc{3.0, 4.0};
  const PortCoupling ports = pcis_couple(y, yc, Eigen::Matrix2d::Identity());
  CHECK(ports.uc[0] == 1.0);
  CHECK(ports.uc[1] == 2.0);
  CHECK(ports.u[0] == -3.0);
  CHECK(ports.u[1] == -4.0);
}

TEST_CASE("closed-loop beam holds its target as a steady state") {
  const BeamPlant plant = default_beam();
  const BeamSynthesis syn =
      synthesize_beam_controller(plant, beam_default_gains(),
                                 BeamEquilibrium{});
  CoupledSystem sys = make_closed_loop(plant, syn);

  const int n = plant.grid().n;
  const Eigen::VectorXd w = syn.w_desired.values();
  const Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  Eigen::Vector4d xc = Eigen::Vector4d::Zero();
  xc[0] = syn.controller.ham.xcd[0];
  xc[1] = syn.controller.ham.xcd[1];

  Eigen::VectorXd dw(n), dp(n);
  Eigen::Vector4d dxc;
  sys.rhs(w, p, xc, dw, dp, dxc);

  CHECK(dw.cwiseAbs().maxCoeff() == 0.0);
  CHECK(dxc.cwiseAbs().maxCoeff() <= 1e-13);
  // the rigid target is elastically neutral up to rounding amplified by h^-4
  CHECK(dp.cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("diagnostics at rest report the seeded energies") {
  const BeamPlant plant = default_beam();
  const BeamSynthesis syn =
      synthesize_beam_controller(plant, beam_default_gains(),
                                 BeamEquilibrium{});
  CoupledSystem sys = make_closed_loop(plant, syn);
  CHECK(sys.controller_state() == syn.controller.xc);

  const DiagnosticsRecord rec = sys.diagnostics();
  CHECK(rec.t == 0.0);
  CHECK(rec.H == 0.0);
  // Hc = (c1/2) xcd1^2 + (c2/2) xcd2^2 = 2 (0.08^2 + 0.12^2)
  CHECK(rec.Hc == doctest::Approx(0.0416).epsilon(1e-12));
  CHECK(rec.Hcl == doctest::Approx(rec.H + rec.Hc).epsilon(1e-14));
  CHECK(std::abs(rec.dHcl) <= 1e-12);
  CHECK(rec.casimir_drift[0] == 0.0);
  CHECK(rec.casimir_drift[1] == 0.0);
  CHECK(rec.eq_error == doctest::Approx(1.0).epsilon(1e-12));
  // yc = Gc' grad Hc with grad = (-c1 xcd1, -c2 xcd2, 0, 0)
  CHECK(rec.yc[0] == doctest::Approx(-0.32).epsilon(1e-12));
  CHECK(rec.yc[1] == doctest::Approx(-0.48).epsilon(1e-12));
  CHECK(rec.u[0] == doctest::Approx(0.32).epsilon(1e-12));
  CHECK(rec.u[1] == doctest::Approx(0.48).epsilon(1e-12));
}

TEST_CASE("automatic step selection honors plant and controller spectra") {
  const SimOptions opts;

  const BeamPlant beam = default_beam();
  CoupledSystem open = make_open_loop(beam, desired_beam_shape(beam, {}));
  CHECK(open.auto_dt(opts) ==
        doctest::Approx(stability_dt(beam, opts.safety)).epsilon(1e-15));

  const BeamSynthesis bsyn =
      synthesize_beam_controller(beam, beam_default_gains(),
                                 BeamEquilibrium{});
  CoupledSystem closed = make_closed_loop(beam, bsyn);
  CHECK(closed.auto_dt(opts) ==
        doctest::Approx(stability_dt(beam, opts.safety)).epsilon(1e-15));

  const PlatePlant plate = default_plate();
  const PlateSynthesis psyn =
      synthesize_plate_controller(plate, plate_default_gains(),
                                  PlateEquilibrium{});
  CoupledSystem pclosed = make_closed_loop(plate, psyn);
  // the damping block eigenvalue -Rc33 Mc33 = -2e6 dominates the plant bound
  CHECK(pclosed.auto_dt(opts) ==
        doctest::Approx(0.9 * 2.7853 / 2e6).epsilon(1e-9));

  SimOptions bad = opts;
  bad.controller_safety = 0.0;
  CHECK_THROWS_AS(closed.auto_dt(bad), std::invalid_argument);

  bad = opts;
  bad.t_final = -1.0;
  CHECK_THROWS_AS(simulate(open, bad), std::invalid_argument);
  bad = opts;
  bad.log_every = 0;
  CHECK_THROWS_AS(simulate(open, bad), std::invalid_argument);
  bad = opts;
  bad.dt_auto = false;
  bad.dt = 0.0;
  CHECK_THROWS_AS(simulate(open, bad), std::invalid_argument);
  bad = opts;
  bad.blowup_factor = 0.0;
  CHECK_THROWS_AS(simulate(open, bad), std::invalid_argument);
}

TEST_CASE("one step reproduces the degree-four polynomial of the flow map") {
  BeamPlant plant = default_beam();
  const int n = plant.grid().n;
  const ModeEstimate1D mode = beam_fundamental_state(plant, 1.0);
  plant.set_state(mode.shape, Field1D(plant.grid()));
  CoupledSystem sys = make_open_loop(plant, desired_beam_shape(plant, {}));

  Eigen::MatrixXd A(2 * n, 2 * n);
  Eigen::VectorXd w(n), p(n), dw(n), dp(n);
  Eigen::Vector4d xc = Eigen::Vector4d::Zero();
  Eigen::Vector4d dxc;
  for (int j = 0; j < 2 * n; ++j) {
    w.setZero();
    p.setZero();
    if (j < n) {
      w[j] = 1.0;
    } else {
      p[j - n] = 1.0;
    }
    sys.rhs(w, p, xc, dw, dp, dxc);
    A.col(j).head(n) = dw;
    A.col(j).tail(n) = dp;
  }

  const double dt = 1e-3;
  Eigen::VectorXd acc(2 * n);
  acc.head(n) = mode.shape.values();
  acc.tail(n).setZero();
  Eigen::VectorXd term = acc;
  for (int k = 1; k <= 4; ++k) {
    term = (A * term) * (dt / k);
    acc += term;
  }

  sys.step(dt);
  CHECK((sys.w() - acc.head(n)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((sys.p() - acc.tail(n)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("simulation honors the logging cadence") {
  BeamPlant plant = default_beam();
  const ModeEstimate1D mode = beam_fundamental_state(plant, 0.5);
  plant.set_state(mode.shape, Field1D(plant.grid()));
  CoupledSystem sys = make_open_loop(plant, desired_beam_shape(plant, {}));

  SimOptions opts;
  opts.dt_auto = false;
  opts.dt = 1e-3;
  opts.t_final = 1e-2;
  opts.log_every = 3;
  const auto records = simulate(sys, opts);

  REQUIRE(records.size() == 5);
  const double expected_t[5] = {0.0, 3e-3, 6e-3, 9e-3, 1e-2};
  for (int i = 0; i < 5; ++i) {
    CHECK(records[i].t == doctest::Approx(expected_t[i]).epsilon(1e-12));
    // open-loop runs keep the ports silent and the invariants frozen
    CHECK(records[i].Hc == 0.0);
    CHECK(records[i].u[0] == 0.0);
    CHECK(records[i].u[1] == 0.0);
    CHECK(records[i].yc[0] == 0.0);
    CHECK(records[i].yc[1] == 0.0);
    CHECK(records[i].casimir_drift[0] == 0.0);
    CHECK(records[i].casimir_drift[1] == 0.0);
  }

  SimOptions still = opts;
  still.t_final = 0.0;
  CoupledSystem fresh = make_open_loop(plant, desired_beam_shape(plant, {}));
  const auto single = simulate(fresh, still);
  REQUIRE(single.size() == 1);
  CHECK(single[0].t == 0.0);
}

TEST_CASE("a rest state stays exactly at rest") {
  const PlatePlant plant = default_plate();
  CoupledSystem sys = make_open_loop(plant, Field2D(plant.grid()));
  sys.step(1e-4);
  CHECK(sys.w().cwiseAbs().maxCoeff() == 0.0);
  CHECK(sys.p().cwiseAbs().maxCoeff() == 0.0);
  CHECK(sys.diagnostics().H == 0.0);
}

TEST_CASE("instability is reported as a blow-up") {
  BeamPlant plant = default_beam();
  const ModeEstimate1D mode = beam_fundamental_state(plant, 1.0);
  plant.set_state(mode.shape, Field1D(plant.grid()));
  CoupledSystem sys = make_open_loop(plant, desired_beam_shape(plant, {}));

  SimOptions opts;
  opts.dt_auto = false;
  opts.dt = 1.4e-2;  // roughly ten times the stability limit
  opts.t_final = 1.0;
  opts.log_every = 10;

  bool thrown = false;
  try {
    simulate(sys, opts);
  } catch (const BlowupError& err) {
    thrown = true;
    const std::string what = err.what();
    CHECK(what.find("energy left the stable range at t = ") !=
          std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("closed-loop beam dissipates toward the target") {
  const BeamPlant plant = default_beam();
  const BeamSynthesis syn =
      synthesize_beam_controller(plant, beam_default_gains(),
                                 BeamEquilibrium{});
  CoupledSystem sys = make_closed_loop(plant, syn);

  SimOptions opts;
  opts.t_final = 2.0;
  opts.log_every = 200;
  const auto records = simulate(sys, opts);
  REQUIRE(records.size() >= 3);

  const double scale = std::max(1.0, std::abs(records.front().Hcl));
  for (std::size_t i = 0; i < records.size(); ++i) {
    const DiagnosticsRecord& rec = records[i];
    CHECK(std::abs(rec.Hcl - (rec.H + rec.Hc)) <= 1e-12 * scale);
    CHECK(rec.dHcl <= 1e-9 * scale);
    CHECK(std::abs(rec.casimir_drift[0]) <= 1e-12);
    CHECK(std::abs(rec.casimir_drift[1]) <= 1e-12);
    if (i > 0) {
      CHECK(rec.Hcl <= records[i - 1].Hcl + 1e-9 * scale);
    }
  }
  CHECK(records.back().Hcl < records.front().Hcl);
  CHECK(records.back().eq_error < records.front().eq_error);
}

TEST_CASE("energy drift shrinks at fifth order under step refinement") {
  // the energy decay of the classical fourth-order scheme on an oscillatory
  // mode is 1 - |R(i w dt)|^2 = (w dt)^6 / 72 + O((w dt)^8) per step, so a
  // fixed-horizon drift scales as dt^5 and halving dt divides it by 32
  const double T = 1.2;
  double drift[2] = {0.0, 0.0};
  double energy0 = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    BeamPlant plant = default_beam();
    const ModeEstimate1D mode = beam_fundamental_state(plant, 1.0);
    plant.set_state(mode.shape, Field1D(plant.grid()));
    CoupledSystem sys = make_open_loop(plant, desired_beam_shape(plant, {}));
    SimOptions opts;
    opts.dt_auto = false;
    opts.dt = pass == 0 ? 1.2e-3 : 6e-4;
    opts.t_final = T;
    opts.log_every = 1 << 30;
    const auto records = simulate(sys, opts);
    energy0 = records.front().Hcl;
    drift[pass] = std::abs(records.back().Hcl - records.front().Hcl);
  }
  REQUIRE(energy0 > 0.0);
  CHECK(drift[1] / energy0 <= 1e-8);
  const double ratio = drift[0] / drift[1];
  INFO("drift ratio coarse/fine = ", ratio);
  CHECK(ratio >= 24.0);
  CHECK(ratio <= 44.0);
}
