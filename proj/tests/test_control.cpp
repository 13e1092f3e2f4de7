#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "doctest.h"
#include "phsim/beam.hpp"
#include "phsim/casimir.hpp"
#include "phsim/closed_loop.hpp"
#include "phsim/controller.hpp"
#include "phsim/plate.hpp"
#include "phsim/synthesis.hpp"

using namespace phsim;

namespace {

Controller reference_controller() {
  Controller c;
  c.ham.c1 = 2.0;
  c.ham.c2 = 3.0;
  c.ham.Mc << 4.0, 1.0, 1.0, 5.0;
  c.ham.xcd << 0.5, -0.25;
  c.ham.us << 0.1, 0.2;
  c.Jc(2, 3) = 1.5;
  c.Jc(3, 2) = -1.5;
  c.Rc(2, 2) = 3.0;
  c.Rc(2, 3) = -1.0;
  c.Rc(3, 2) = -1.0;
  c.Rc(3, 3) = 2.0;
  c.Gc(0, 0) = 1.0;
  c.Gc(1, 1) = 1.0;
  c.Gc(2, 0) = 7.0;
  c.Gc(3, 1) = -4.0;
  return c;
}

const ResidualRow* find_row(const ResidualReport& report, const char* name) {
  for (const ResidualRow& row : report.rows) {
    if (row.condition == name) return &row;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("port coupling cancels the exchanged power for arbitrary gains") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::Vector2d y{dist(rng), dist(rng)};
    Eigen::Vector2d yc{dist(rng), dist(rng)};
    Eigen::Matrix2d K;
    K << dist(rng), dist(rng), dist(rng), dist(rng);

    const PortCoupling ports = pcis_couple(y, yc, K);
    CHECK((ports.uc - K * y).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ports.u + K.transpose() * yc).cwiseAbs().maxCoeff() == 0.0);
    const double power = ports.u.dot(y) + ports.uc.dot(yc);
    CHECK(std::abs(power) <= 1e-12);
  }
}

TEST_CASE("controller validation rejects malformed structure matrices") {
  const Controller good = reference_controller();
  CHECK_NOTHROW(good.validate());

  Controller bad = good;
  bad.Jc(0, 1) = 0.3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = good;
  bad.Rc(2, 3) = 5.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = good;
  bad.Rc.setZero();
  bad.Rc(2, 2) = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = good;
  bad.ham.c1 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = good;
  bad.ham.Mc << 1.0, 3.0, 3.0, 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = good;
  bad.ham.Mc(0, 1) = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("controller energy, gradient, flow and output agree") {
  const Controller ctrl = reference_controller();
  const Eigen::Vector4d xc{0.7, -0.3, 0.2, 0.9};

  const Eigen::Vector4d grad = grad_Hc(ctrl.ham, xc);
  const double h = 1e-6;
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector4d lo = xc;
    Eigen::Vector4d hi = xc;
    lo[i] -= h;
    hi[i] += h;
    const double fd = (controller_hamiltonian(ctrl.ham, hi) -
                       controller_hamiltonian(ctrl.ham, lo)) /
                      (2.0 * h);
    CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-7));
  }

  Controller at_state = ctrl;
  at_state.xc = xc;
  const Eigen::Vector2d uc{0.4, -1.1};
  const Eigen::Vector4d flow = controller_rhs(at_state, uc);
  const Eigen::Vector4d expected =
      (ctrl.Jc - ctrl.Rc) * grad + ctrl.Gc * uc;
  CHECK((flow - expected).cwiseAbs().maxCoeff() <= 1e-13);

  const Eigen::Vector2d out = controller_output(at_state);
  CHECK((out - ctrl.Gc.transpose() * grad).cwiseAbs().maxCoeff() <= 1e-13);

  // the quadratic shift puts the energy minimum at xcd + us / c
  Eigen::Vector4d minimum = Eigen::Vector4d::Zero();
  minimum[0] = ctrl.ham.xcd[0] + ctrl.ham.us[0] / ctrl.ham.c1;
  minimum[1] = ctrl.ham.xcd[1] + ctrl.ham.us[1] / ctrl.ham.c2;
  CHECK(std::abs(controller_hamiltonian(ctrl.ham, minimum)) <= 1e-28);
}

TEST_CASE("plate controller synthesis satisfies every invariance condition") {
  const Grid2D grid(21, 21, 1.0, 1.0);
  const PlatePlant plant(grid, PlateParams{});
  const PlateSynthesis syn =
      synthesize_plate_controller(plant, plate_default_gains(),
                                  PlateEquilibrium{});

  const ResidualReport report =
      casimir_residuals_prop1(plant, syn.controller, syn.spec);
  for (const ResidualRow& row : report.rows) {
    INFO("condition: ", row.condition, " norm=", row.norm,
         " tol=", row.tolerance);
    CHECK(row.pass);
  }
  CHECK(report.all_pass());

  // the synthesized relation ties gamma to the input columns exactly
  CHECK((syn.spec.gamma[0].values() + plant.g2(1).values())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((syn.spec.gamma[1].values() + plant.g2(2).values())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(syn.spec.K.isIdentity(0.0));

  // free-edge trace of gamma is small but nonzero on this grid
  const ResidualRow* edge = find_row(report, "gamma_free_edge_trace");
  REQUIRE(edge != nullptr);
  CHECK(edge->norm < 1e-4);
  CHECK(edge->norm > 1e-6);

  // frozen feedforward and shaping targets for the default tuning
  CHECK(syn.us[0] == doctest::Approx(0.246416).epsilon(1e-4));
  CHECK(syn.us[1] == doctest::Approx(-0.246416).epsilon(1e-4));
  CHECK(std::abs(syn.us[0] + syn.us[1]) <= 1e-9);
  CHECK(syn.feedforward_residual == doctest::Approx(0.9907701).epsilon(1e-4));
  CHECK(syn.controller.ham.xcd[0] ==
        doctest::Approx(7.697244e-3).epsilon(1e-4));
  CHECK(syn.controller.ham.xcd[1] ==
        doctest::Approx(-7.697244e-3).epsilon(1e-4));

  // integrator states are seeded so the invariants start at zero from rest
  CHECK(syn.controller.xc.cwiseAbs().maxCoeff() == 0.0);
  CHECK(syn.controller.ham.us[0] == syn.us[0]);
  CHECK(syn.controller.ham.us[1] == syn.us[1]);
}

TEST_CASE("perturbed invariant data is rejected") {
  const Grid2D grid(21, 21, 1.0, 1.0);
  const PlatePlant plant(grid, PlateParams{});
  const PlateSynthesis syn =
      synthesize_plate_controller(plant, plate_default_gains(),
                                  PlateEquilibrium{});

  SUBCASE("bump added to gamma breaks the input match") {
    CasimirSpec2D spec = syn.spec;
    spec.gamma[0].values()[grid.index(10, 10)] += 1e-3;
    const ResidualReport report =
        casimir_residuals_prop1(plant, syn.controller, spec);
    CHECK_FALSE(report.all_pass());
    const ResidualRow* row = find_row(report, "gamma_input_match");
    REQUIRE(row != nullptr);
    CHECK_FALSE(row->pass);
  }

  SUBCASE("doubled coupling gain breaks the input match") {
    CasimirSpec2D spec = syn.spec;
    spec.K *= 2.0;
    const ResidualReport report =
        casimir_residuals_prop1(plant, syn.controller, spec);
    CHECK_FALSE(report.all_pass());
    const ResidualRow* row = find_row(report, "gamma_input_match");
    REQUIRE(row != nullptr);
    CHECK_FALSE(row->pass);
  }

  SUBCASE("singular coupling gain is refused outright") {
    CasimirSpec2D spec = syn.spec;
    spec.K.setZero();
    CHECK_THROWS_AS(casimir_residuals_prop1(plant, syn.controller, spec),
                    std::invalid_argument);
  }

  SUBCASE("gamma sampled on a foreign grid is refused") {
    const Grid2D small(9, 9, 1.0, 1.0);
    CasimirSpec2D spec = syn.spec;
    spec.gamma[0] = Field2D(small);
    CHECK_THROWS_AS(casimir_residuals_prop1(plant, syn.controller, spec),
                    std::invalid_argument);
  }

  SUBCASE("indefinite damping block is refused during synthesis") {
    ControllerGains gains = plate_default_gains();
    gains.Rc33 = -1.0;
    CHECK_THROWS_AS(
        synthesize_plate_controller(plant, gains, PlateEquilibrium{}),
        std::invalid_argument);
  }
}

TEST_CASE("moved beam impulse is rejected") {
  const Grid1D grid(21, 1.0);
  const BeamPlant plant(grid, BeamParams{});
  const BeamSynthesis syn =
      synthesize_beam_controller(plant, beam_default_gains(),
                                 BeamEquilibrium{});

  CasimirSpec1D spec = syn.spec;
  const int node = plant.actuation_node(1);
  const double value = spec.gamma[0].values()[node];
  spec.gamma[0].values()[node] = 0.0;
  spec.gamma[0].values()[node + 1] = value;

  const ResidualReport report =
      casimir_residuals_prop2(plant, syn.controller, spec);
  CHECK_FALSE(report.all_pass());
  const ResidualRow* off = find_row(report, "offsupport_gamma");
  REQUIRE(off != nullptr);
  CHECK_FALSE(off->pass);
  const ResidualRow* pairing = find_row(report, "actuation_pairing");
  REQUIRE(pairing != nullptr);
  CHECK_FALSE(pairing->pass);
}

TEST_CASE("beam controller synthesis pins the target point deflections") {
  const Grid1D grid(21, 1.0);
  const BeamPlant plant(grid, BeamParams{});
  const BeamSynthesis syn =
      synthesize_beam_controller(plant, beam_default_gains(),
                                 BeamEquilibrium{});

  const ResidualReport report =
      casimir_residuals_prop2(plant, syn.controller, syn.spec);
  for (const ResidualRow& row : report.rows) {
    INFO("condition: ", row.condition, " norm=", row.norm,
         " tol=", row.tolerance);
    CHECK(row.pass);
  }
  CHECK(report.all_pass());

  // targets are the desired deflections at the actuation points of
  // w_d(z) = 0.1 z + 0.05
  CHECK(syn.controller.ham.xcd[0] == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(syn.controller.ham.xcd[1] == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(syn.controller.ham.us.cwiseAbs().maxCoeff() == 0.0);

  // gamma is the negative discrete unit impulse at each actuation node
  const double h = grid.spacing;
  const int a1 = plant.actuation_node(1);
  const int a2 = plant.actuation_node(2);
  CHECK(syn.spec.gamma[0].values()[a1] == doctest::Approx(-1.0 / h));
  CHECK(syn.spec.gamma[1].values()[a2] == doctest::Approx(-1.0 / h));
  for (int i = 0; i < grid.n; ++i) {
    if (i != a1) CHECK(syn.spec.gamma[0].values()[i] == 0.0);
    if (i != a2) CHECK(syn.spec.gamma[1].values()[i] == 0.0);
  }

  CHECK(syn.controller.Gc(0, 0) == 1.0);
  CHECK(syn.controller.Gc(1, 1) == 1.0);
  CHECK(syn.controller.Gc(0, 1) == 0.0);
  CHECK(syn.controller.Gc(1, 0) == 0.0);
  CHECK(syn.controller.Gc(2, 0) == 10.0);
  CHECK(syn.controller.Gc(3, 1) == 10.0);
  CHECK(syn.controller.Gc(2, 1) == 0.0);
  CHECK(syn.controller.Gc(3, 0) == 0.0);
}

TEST_CASE("default gain tables match the reference tuning") {
  const ControllerGains plate = plate_default_gains();
  CHECK(plate.c1 == 0.1);
  CHECK(plate.c2 == 0.1);
  CHECK(plate.Jc34 == 1.0);
  CHECK(plate.Rc33 == 200.0);
  CHECK(plate.Rc34 == -1.0);
  CHECK(plate.Rc44 == 150.0);
  CHECK(plate.Mc33 == 1e4);
  CHECK(plate.Mc34 == 0.0);
  CHECK(plate.Mc44 == 1e4);
  CHECK(plate.Gc31 == 100.0);
  CHECK(plate.Gc32 == 0.0);
  CHECK(plate.Gc41 == 100.0);
  CHECK(plate.Gc42 == 0.0);
  CHECK(plate.coupling_rows_scale == 1.0);

  const ControllerGains beam = beam_default_gains();
  CHECK(beam.c1 == 4.0);
  CHECK(beam.c2 == 4.0);
  CHECK(beam.Jc34 == 0.0);
  CHECK(beam.Rc33 == 50.0);
  CHECK(beam.Rc34 == 0.0);
  CHECK(beam.Rc44 == 50.0);
  CHECK(beam.Mc33 == 10.0);
  CHECK(beam.Mc34 == 0.0);
  CHECK(beam.Mc44 == 10.0);
  CHECK(beam.Gc31 == 10.0);
  CHECK(beam.Gc32 == 0.0);
  CHECK(beam.Gc41 == 0.0);
  CHECK(beam.Gc42 == 10.0);
  CHECK(beam.coupling_rows_scale == 1.0);
}

TEST_CASE("feedforward fit vanishes for the rigid beam target") {
  const Grid1D grid(21, 1.0);
  const BeamPlant plant(grid, BeamParams{});
  const Field1D wd = desired_beam_shape(plant, BeamEquilibrium{});
  const FeedforwardResult ff = compute_feedforward(plant, wd);
  CHECK(ff.us.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("controller synthesis is deterministic") {
  const Grid2D grid(21, 21, 1.0, 1.0);
  const PlatePlant plant(grid, PlateParams{});
  const PlateSynthesis first =
      synthesize_plate_controller(plant, plate_default_gains(),
                                  PlateEquilibrium{});
  const PlateSynthesis second =
      synthesize_plate_controller(plant, plate_default_gains(),
                                  PlateEquilibrium{});

  CHECK(first.us == second.us);
  CHECK(first.controller.ham.xcd == second.controller.ham.xcd);
  CHECK(first.controller.Gc == second.controller.Gc);
  CHECK(first.w_desired.values() == second.w_desired.values());

  const ResidualReport ra =
      casimir_residuals_prop1(plant, first.controller, first.spec);
  const ResidualReport rb =
      casimir_residuals_prop1(plant, second.controller, second.spec);
  REQUIRE(ra.rows.size() == rb.rows.size());
  for (std::size_t i = 0; i < ra.rows.size(); ++i) {
    CHECK(ra.rows[i].norm == rb.rows[i].norm);
  }
}

TEST_CASE("residual report serializes one line per condition") {
  const Grid1D grid(21, 1.0);
  const BeamPlant plant(grid, BeamParams{});
  const BeamSynthesis syn =
      synthesize_beam_controller(plant, beam_default_gains(),
                                 BeamEquilibrium{});
  const ResidualReport report =
      casimir_residuals_prop2(plant, syn.controller, syn.spec);

  const std::string path = "residual_report_roundtrip.csv";
  write_residual_report_csv(report, path);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "condition,norm,tolerance,pass");
  std::size_t data_lines = 0;
  while (std::getline(in, line)) {
    CHECK(line.size() >= 2);
    CHECK(line.substr(line.size() - 2) == ",1");
    ++data_lines;
  }
  CHECK(data_lines == report.rows.size());
  std::remove(path.c_str());
}
