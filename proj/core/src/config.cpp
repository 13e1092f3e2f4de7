#include "phsim/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "phsim/errors.hpp"

namespace phsim {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) {
  throw ConfigError(message);
}

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const ordered_json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    fail("'" + (path.empty() ? std::string("<root>") : path) +
         "' must be an object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) fail("unknown key '" + join_path(path, item.key()) + "'");
  }
}

const ordered_json* find(const ordered_json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double read_number(const ordered_json& v, const std::string& path) {
  if (!v.is_number()) fail("'" + path + "' must be a number");
  return v.get<double>();
}

int read_int(const ordered_json& v, const std::string& path) {
  if (!v.is_number_integer()) fail("'" + path + "' must be an integer");
  return v.get<int>();
}

bool read_bool(const ordered_json& v, const std::string& path) {
  if (!v.is_boolean()) fail("'" + path + "' must be a boolean");
  return v.get<bool>();
}

std::string read_string(const ordered_json& v, const std::string& path) {
  if (!v.is_string()) fail("'" + path + "' must be a string");
  return v.get<std::string>();
}

void maybe_number(const ordered_json& obj, const char* key,
                  const std::string& path, double& out) {
  if (const ordered_json* v = find(obj, key)) {
    out = read_number(*v, join_path(path, key));
  }
}

void maybe_int(const ordered_json& obj, const char* key,
               const std::string& path, int& out) {
  if (const ordered_json* v = find(obj, key)) {
    out = read_int(*v, join_path(path, key));
  }
}

void maybe_bool(const ordered_json& obj, const char* key,
                const std::string& path, bool& out) {
  if (const ordered_json* v = find(obj, key)) {
    out = read_bool(*v, join_path(path, key));
  }
}

void parse_grid(const ordered_json& obj, GridConfig& grid) {
  const std::string path = "grid";
  check_keys(obj, path, {"n1", "n2", "L1", "L2", "n", "L"});
  maybe_int(obj, "n1", path, grid.n1);
  maybe_int(obj, "n2", path, grid.n2);
  maybe_number(obj, "L1", path, grid.L1);
  maybe_number(obj, "L2", path, grid.L2);
  maybe_int(obj, "n", path, grid.n);
  maybe_number(obj, "L", path, grid.L);
}

void parse_time(const ordered_json& obj, TimeConfig& time) {
  const std::string path = "time";
  check_keys(obj, path,
             {"t_final", "dt", "log_every", "safety", "controller_safety"});
  maybe_number(obj, "t_final", path, time.t_final);
  maybe_int(obj, "log_every", path, time.log_every);
  maybe_number(obj, "safety", path, time.safety);
  maybe_number(obj, "controller_safety", path, time.controller_safety);
  if (const ordered_json* v = find(obj, "dt")) {
    if (v->is_string()) {
      if (v->get<std::string>() != "auto") {
        fail("'time.dt' must be \"auto\" or a positive number");
      }
      time.dt_auto = true;
      time.dt = 0.0;
    } else {
      time.dt = read_number(*v, "time.dt");
      time.dt_auto = false;
      if (!(time.dt > 0.0)) {
        fail("'time.dt' must be \"auto\" or a positive number");
      }
    }
  }
}

void parse_piezo(const ordered_json& obj, PiezoParams& piezo) {
  const std::string path = "plate.piezo";
  check_keys(obj, path, {"PsiP", "a1", "a2", "sigma", "rho_p_h_p", "Xi_p"});
  maybe_number(obj, "PsiP", path, piezo.PsiP);
  maybe_number(obj, "a1", path, piezo.a1);
  maybe_number(obj, "a2", path, piezo.a2);
  maybe_number(obj, "sigma", path, piezo.sigma);
  maybe_number(obj, "rho_p_h_p", path, piezo.rho_p_h_p);
  maybe_number(obj, "Xi_p", path, piezo.Xi_p);
}

void parse_patches(const ordered_json& obj, PatchGeometry& geom) {
  const std::string path = "plate.patches";
  check_keys(obj, path, {"zp1", "Lp1", "Lp2", "zp2_1", "zp2_2"});
  maybe_number(obj, "zp1", path, geom.zp1);
  maybe_number(obj, "Lp1", path, geom.Lp1);
  maybe_number(obj, "Lp2", path, geom.Lp2);
  maybe_number(obj, "zp2_1", path, geom.zp2[0]);
  maybe_number(obj, "zp2_2", path, geom.zp2[1]);
}

void parse_plate(const ordered_json& obj, PlateParams& plate) {
  const std::string path = "plate";
  check_keys(obj, path, {"rho_c_h_c", "E_c_I_c", "nu", "piezo", "patches"});
  maybe_number(obj, "rho_c_h_c", path, plate.rho_c_h_c);
  maybe_number(obj, "E_c_I_c", path, plate.E_c_I_c);
  maybe_number(obj, "nu", path, plate.nu);
  if (const ordered_json* v = find(obj, "piezo")) parse_piezo(*v, plate.piezo);
  if (const ordered_json* v = find(obj, "patches")) {
    parse_patches(*v, plate.geometry);
  }
  if (!(plate.nu >= 0.0 && plate.nu < 0.5)) {
    fail("'plate.nu' must lie in [0, 0.5)");
  }
}

void parse_beam(const ordered_json& obj, BeamParams& beam) {
  const std::string path = "beam";
  check_keys(obj, path, {"rhoA", "EI", "A1", "A2"});
  maybe_number(obj, "rhoA", path, beam.rhoA);
  maybe_number(obj, "EI", path, beam.EI);
  maybe_number(obj, "A1", path, beam.A1);
  maybe_number(obj, "A2", path, beam.A2);
}

void parse_gains(const ordered_json& obj, const std::string& path,
                 ControllerGains& gains) {
  check_keys(obj, path,
             {"c1", "c2", "Jc34", "Rc33", "Rc34", "Rc44", "Mc33", "Mc34",
              "Mc44", "Gc31", "Gc32", "Gc41", "Gc42", "coupling_rows_scale"});
  maybe_number(obj, "c1", path, gains.c1);
  maybe_number(obj, "c2", path, gains.c2);
  maybe_number(obj, "Jc34", path, gains.Jc34);
  maybe_number(obj, "Rc33", path, gains.Rc33);
  maybe_number(obj, "Rc34", path, gains.Rc34);
  maybe_number(obj, "Rc44", path, gains.Rc44);
  maybe_number(obj, "Mc33", path, gains.Mc33);
  maybe_number(obj, "Mc34", path, gains.Mc34);
  maybe_number(obj, "Mc44", path, gains.Mc44);
  maybe_number(obj, "Gc31", path, gains.Gc31);
  maybe_number(obj, "Gc32", path, gains.Gc32);
  maybe_number(obj, "Gc41", path, gains.Gc41);
  maybe_number(obj, "Gc42", path, gains.Gc42);
  maybe_number(obj, "coupling_rows_scale", path, gains.coupling_rows_scale);
}

void parse_plate_equilibrium(const ordered_json& obj, PlateEquilibrium& eq) {
  const std::string path = "plate_equilibrium";
  check_keys(obj, path, {"a", "b", "c", "d"});
  maybe_number(obj, "a", path, eq.a);
  maybe_number(obj, "b", path, eq.b);
  maybe_number(obj, "c", path, eq.c);
  maybe_number(obj, "d", path, eq.d);
}

void parse_beam_equilibrium(const ordered_json& obj, BeamEquilibrium& eq) {
  const std::string path = "beam_equilibrium";
  check_keys(obj, path, {"a", "b"});
  maybe_number(obj, "a", path, eq.a);
  maybe_number(obj, "b", path, eq.b);
}

void parse_output(const ordered_json& obj, OutputConfig& output) {
  const std::string path = "output";
  check_keys(obj, path,
             {"write_fields", "write_edge_trace", "write_materials"});
  maybe_bool(obj, "write_fields", path, output.write_fields);
  maybe_bool(obj, "write_edge_trace", path, output.write_edge_trace);
  maybe_bool(obj, "write_materials", path, output.write_materials);
}

void validate_time(const TimeConfig& time) {
  if (!(time.t_final >= 0.0)) fail("'time.t_final' must be nonnegative");
  if (time.log_every < 1) fail("'time.log_every' must be at least 1");
  if (!(time.safety > 0.0) || time.safety > 1.0) {
    fail("'time.safety' must lie in (0, 1]");
  }
  if (!(time.controller_safety > 0.0) || time.controller_safety > 1.0) {
    fail("'time.controller_safety' must lie in (0, 1]");
  }
}

ordered_json gains_to_json(const ControllerGains& g) {
  return ordered_json{{"c1", g.c1},
                      {"c2", g.c2},
                      {"Jc34", g.Jc34},
                      {"Rc33", g.Rc33},
                      {"Rc34", g.Rc34},
                      {"Rc44", g.Rc44},
                      {"Mc33", g.Mc33},
                      {"Mc34", g.Mc34},
                      {"Mc44", g.Mc44},
                      {"Gc31", g.Gc31},
                      {"Gc32", g.Gc32},
                      {"Gc41", g.Gc41},
                      {"Gc42", g.Gc42},
                      {"coupling_rows_scale", g.coupling_rows_scale}};
}

}  // namespace

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::PlateCasimir:
      return "plate-casimir";
    case Scenario::BeamCasimir:
      return "beam-casimir";
    case Scenario::PlateOpenLoop:
      return "plate-open-loop";
    case Scenario::BeamOpenLoop:
      return "beam-open-loop";
  }
  fail("invalid scenario value");
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "plate-casimir") return Scenario::PlateCasimir;
  if (name == "beam-casimir") return Scenario::BeamCasimir;
  if (name == "plate-open-loop") return Scenario::PlateOpenLoop;
  if (name == "beam-open-loop") return Scenario::BeamOpenLoop;
  fail("unknown scenario '" + name +
       "' (expected plate-casimir, beam-casimir, plate-open-loop or "
       "beam-open-loop)");
}

bool scenario_is_plate(Scenario s) {
  return s == Scenario::PlateCasimir || s == Scenario::PlateOpenLoop;
}

bool scenario_has_controller(Scenario s) {
  return s == Scenario::PlateCasimir || s == Scenario::BeamCasimir;
}

ScenarioConfig parse_config_text(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("config parse error: ") + e.what());
  }
  check_keys(root, "",
             {"schema_version", "scenario", "grid", "time", "plate", "beam",
              "plate_controller", "beam_controller", "plate_equilibrium",
              "beam_equilibrium", "output"});

  ScenarioConfig cfg;
  if (const ordered_json* v = find(root, "schema_version")) {
    if (read_int(*v, "schema_version") != 1) {
      fail("'schema_version' must be 1");
    }
  }
  if (const ordered_json* v = find(root, "scenario")) {
    cfg.scenario = scenario_from_name(read_string(*v, "scenario"));
  }
  if (const ordered_json* v = find(root, "grid")) parse_grid(*v, cfg.grid);
  if (const ordered_json* v = find(root, "time")) parse_time(*v, cfg.time);
  if (const ordered_json* v = find(root, "plate")) parse_plate(*v, cfg.plate);
  if (const ordered_json* v = find(root, "beam")) parse_beam(*v, cfg.beam);
  if (const ordered_json* v = find(root, "plate_controller")) {
    parse_gains(*v, "plate_controller", cfg.plate_controller);
  }
  if (const ordered_json* v = find(root, "beam_controller")) {
    parse_gains(*v, "beam_controller", cfg.beam_controller);
  }
  if (const ordered_json* v = find(root, "plate_equilibrium")) {
    parse_plate_equilibrium(*v, cfg.plate_equilibrium);
  }
  if (const ordered_json* v = find(root, "beam_equilibrium")) {
    parse_beam_equilibrium(*v, cfg.beam_equilibrium);
  }
  if (const ordered_json* v = find(root, "output")) {
    parse_output(*v, cfg.output);
  }
  validate_time(cfg.time);
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string resolved_config_text(const ScenarioConfig& cfg) {
  ordered_json root;
  root["schema_version"] = 1;
  if (cfg.scenario) root["scenario"] = scenario_name(*cfg.scenario);
  root["grid"] = ordered_json{{"n1", cfg.grid.n1}, {"n2", cfg.grid.n2},
                              {"L1", cfg.grid.L1}, {"L2", cfg.grid.L2},
                              {"n", cfg.grid.n},   {"L", cfg.grid.L}};
  ordered_json time;
  time["t_final"] = cfg.time.t_final;
  if (cfg.time.dt_auto) {
    time["dt"] = "auto";
  } else {
    time["dt"] = cfg.time.dt;
  }
  time["log_every"] = cfg.time.log_every;
  time["safety"] = cfg.time.safety;
  time["controller_safety"] = cfg.time.controller_safety;
  root["time"] = time;

  root["plate"] = ordered_json{
      {"rho_c_h_c", cfg.plate.rho_c_h_c},
      {"E_c_I_c", cfg.plate.E_c_I_c},
      {"nu", cfg.plate.nu},
      {"piezo",
       ordered_json{{"PsiP", cfg.plate.piezo.PsiP},
                    {"a1", cfg.plate.piezo.a1},
                    {"a2", cfg.plate.piezo.a2},
                    {"sigma", cfg.plate.piezo.sigma},
                    {"rho_p_h_p", cfg.plate.piezo.rho_p_h_p},
                    {"Xi_p", cfg.plate.piezo.Xi_p}}},
      {"patches", ordered_json{{"zp1", cfg.plate.geometry.zp1},
                               {"Lp1", cfg.plate.geometry.Lp1},
                               {"Lp2", cfg.plate.geometry.Lp2},
                               {"zp2_1", cfg.plate.geometry.zp2[0]},
                               {"zp2_2", cfg.plate.geometry.zp2[1]}}}};
  root["beam"] = ordered_json{{"rhoA", cfg.beam.rhoA},
                              {"EI", cfg.beam.EI},
                              {"A1", cfg.beam.A1},
                              {"A2", cfg.beam.A2}};
  root["plate_controller"] = gains_to_json(cfg.plate_controller);
  root["beam_controller"] = gains_to_json(cfg.beam_controller);
  root["plate_equilibrium"] = ordered_json{{"a", cfg.plate_equilibrium.a},
                                           {"b", cfg.plate_equilibrium.b},
                                           {"c", cfg.plate_equilibrium.c},
                                           {"d", cfg.plate_equilibrium.d}};
  root["beam_equilibrium"] = ordered_json{{"a", cfg.beam_equilibrium.a},
                                          {"b", cfg.beam_equilibrium.b}};
  root["output"] =
      ordered_json{{"write_fields", cfg.output.write_fields},
                   {"write_edge_trace", cfg.output.write_edge_trace},
                   {"write_materials", cfg.output.write_materials}};
  return root.dump(2) + "\n";
}

void write_resolved_config(const ScenarioConfig& cfg,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write resolved config to '" + path + "'");
  }
  out << resolved_config_text(cfg);
}

SimOptions sim_options(const ScenarioConfig& cfg) {
  SimOptions opts;
  opts.t_final = cfg.time.t_final;
  opts.dt = cfg.time.dt;
  opts.dt_auto = cfg.time.dt_auto;
  opts.log_every = cfg.time.log_every;
  opts.safety = cfg.time.safety;
  opts.controller_safety = cfg.time.controller_safety;
  return opts;
}

}  // namespace phsim
