#pragma once

#include <optional>
#include <string>

#include "phsim/beam.hpp"
#include "phsim/closed_loop.hpp"
#include "phsim/plate.hpp"
#include "phsim/synthesis.hpp"

namespace phsim {

enum class Scenario { PlateCasimir, BeamCasimir, PlateOpenLoop, BeamOpenLoop };

std::string scenario_name(Scenario s);

/// Throws ConfigError for an unknown name.
Scenario scenario_from_name(const std::string& name);

bool scenario_is_plate(Scenario s);
bool scenario_has_controller(Scenario s);

/// Grid sizes for both plants; n1/n2/L1/L2 feed the plate, n/L the beam.
struct GridConfig {
  int n1 = 21;
  int n2 = 21;
  double L1 = 1.0;
  double L2 = 1.0;
  int n = 21;
  double L = 1.0;
};

struct TimeConfig {
  double t_final = 50.0;
  bool dt_auto = true;
  double dt = 0.0;  // explicit step, used when dt_auto is false
  int log_every = 1000;
  double safety = 0.8;
  double controller_safety = 0.9;
};

struct OutputConfig {
  bool write_fields = true;      // w_final.csv, w_desired.csv
  bool write_edge_trace = true;  // plate deflection along z2 = L2 per log step
  bool write_materials = false;  // mu.csv, xi.csv, g21.csv, g22.csv
};

/// Full scenario description with every parameter defaulted to the reference
/// values; a config file only needs to override what it changes.
struct ScenarioConfig {
  std::optional<Scenario> scenario;
  GridConfig grid;
  TimeConfig time;
  PlateParams plate;
  BeamParams beam;
  ControllerGains plate_controller = plate_default_gains();
  ControllerGains beam_controller = beam_default_gains();
  PlateEquilibrium plate_equilibrium;
  BeamEquilibrium beam_equilibrium;
  OutputConfig output;
};

/// Parses a strict JSON config: unknown keys are rejected with their full
/// dotted path, schema_version must be 1 when present, time.dt is "auto" or
/// a positive number, and plate.nu must lie in [0, 0.5).  Missing keys keep
/// their defaults.  Throws ConfigError.
ScenarioConfig parse_config_text(const std::string& text);

/// parse_config_text on the contents of path; throws ConfigError when the
/// file cannot be read.
ScenarioConfig load_config_file(const std::string& path);

/// The fully resolved configuration (defaults filled in) as pretty JSON.
std::string resolved_config_text(const ScenarioConfig& cfg);

void write_resolved_config(const ScenarioConfig& cfg, const std::string& path);

/// Copies the time section into integrator options.
SimOptions sim_options(const ScenarioConfig& cfg);

}  // namespace phsim
