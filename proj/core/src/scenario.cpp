#include "phsim/scenario.hpp"

#include "phsim/errors.hpp"

namespace phsim {

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
  if (!cfg.scenario) {
    throw ConfigError(
        "no scenario selected (use --scenario or the config's scenario key)");
  }
  BuiltScenario built;
  built.config = cfg;
  const Scenario s = *cfg.scenario;

  if (scenario_is_plate(s)) {
    const Grid2D grid{cfg.grid.n1, cfg.grid.n2, cfg.grid.L1, cfg.grid.L2};
    built.plate.emplace(grid, cfg.plate);
    if (scenario_has_controller(s)) {
      built.plate_synthesis = synthesize_plate_controller(
          *built.plate, cfg.plate_controller, cfg.plate_equilibrium);
      built.system.emplace(
          make_closed_loop(*built.plate, *built.plate_synthesis));
    } else {
      const ModeEstimate2D mode = plate_fundamental_state(*built.plate, 0.01);
      built.mode_omega = mode.omega;
      built.plate->set_state(mode.shape, Field2D(grid));
      built.system.emplace(make_open_loop(
          *built.plate, desired_plate_shape(*built.plate,
                                            cfg.plate_equilibrium)));
    }
  } else {
    const Grid1D grid{cfg.grid.n, cfg.grid.L};
    built.beam.emplace(grid, cfg.beam);
    if (scenario_has_controller(s)) {
      built.beam_synthesis = synthesize_beam_controller(
          *built.beam, cfg.beam_controller, cfg.beam_equilibrium);
      built.system.emplace(
          make_closed_loop(*built.beam, *built.beam_synthesis));
    } else {
      const ModeEstimate1D mode = beam_fundamental_state(*built.beam, 0.01);
      built.mode_omega = mode.omega;
      built.beam->set_state(mode.shape, Field1D(grid));
      built.system.emplace(make_open_loop(
          *built.beam,
          desired_beam_shape(*built.beam, cfg.beam_equilibrium)));
    }
  }
  return built;
}

}  // namespace phsim
