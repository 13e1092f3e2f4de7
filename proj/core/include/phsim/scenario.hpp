#pragma once

#include <optional>

#include "phsim/config.hpp"

namespace phsim {

/// Everything needed to run or verify one scenario: the plant (plate or
/// beam), the synthesized controller data for the controlled scenarios, and
/// the coupled system ready to integrate.  Controlled scenarios start from
/// the flat rest state; open-loop scenarios start from the fundamental-mode
/// deflection scaled to amplitude 0.01, at rest.
struct BuiltScenario {
  ScenarioConfig config;
  std::optional<PlatePlant> plate;
  std::optional<BeamPlant> beam;
  std::optional<PlateSynthesis> plate_synthesis;
  std::optional<BeamSynthesis> beam_synthesis;
  std::optional<CoupledSystem> system;
  double mode_omega = 0.0;  // open loop: frequency of the initial mode
};

/// Builds the plant, controller and coupled system for cfg.  cfg.scenario
/// must be engaged; throws ConfigError otherwise.
BuiltScenario build_scenario(const ScenarioConfig& cfg);

}  // namespace phsim
