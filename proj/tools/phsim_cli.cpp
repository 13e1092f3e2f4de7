#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phsim/casimir.hpp"
#include "phsim/checks.hpp"
#include "phsim/closed_loop.hpp"
#include "phsim/config.hpp"
#include "phsim/csv.hpp"
#include "phsim/errors.hpp"
#include "phsim/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using phsim::BuiltScenario;
using phsim::ConfigError;
using phsim::DiagnosticsRecord;
using phsim::ResidualReport;
using phsim::ResidualRow;
using phsim::Scenario;
using phsim::ScenarioConfig;
using phsim::SimOptions;

constexpr const char* kTrajectoryHeader =
    "t,H,Hc,Hcl,dHcl,C1_drift,C2_drift,eq_error,u1,u2";

struct CommonFlags {
  std::string scenario;
  std::string config_path;
  std::string out_dir = "out";
  int grid_n = 0;
  std::string dt;
  std::optional<double> t_final;
  std::optional<int> log_every;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--scenario", flags.scenario,
                  "plate-casimir | beam-casimir | plate-open-loop | "
                  "beam-open-loop");
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out_dir, "output directory (default: out)");
  cmd->add_option("--grid-n", flags.grid_n,
                  "override the node count per direction");
  cmd->add_option("--dt", flags.dt, "time step: \"auto\" or a positive number");
  cmd->add_option("--t-final", flags.t_final, "simulation horizon");
  cmd->add_option("--log-every", flags.log_every,
                  "steps between logged samples");
}

ScenarioConfig resolve_config(const CommonFlags& flags) {
  ScenarioConfig cfg = flags.config_path.empty()
                           ? ScenarioConfig{}
                           : phsim::load_config_file(flags.config_path);
  if (!flags.scenario.empty()) {
    const Scenario from_flag = phsim::scenario_from_name(flags.scenario);
    if (cfg.scenario && *cfg.scenario != from_flag) {
      throw ConfigError("scenario '" + phsim::scenario_name(*cfg.scenario) +
                        "' in the config conflicts with --scenario " +
                        flags.scenario);
    }
    cfg.scenario = from_flag;
  }
  if (flags.grid_n != 0) {
    cfg.grid.n1 = flags.grid_n;
    cfg.grid.n2 = flags.grid_n;
    cfg.grid.n = flags.grid_n;
  }
  if (!flags.dt.empty()) {
    if (flags.dt == "auto") {
      cfg.time.dt_auto = true;
      cfg.time.dt = 0.0;
    } else {
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(flags.dt, &used);
        if (used != flags.dt.size()) throw std::invalid_argument(flags.dt);
      } catch (const std::exception&) {
        throw ConfigError("--dt must be \"auto\" or a positive number");
      }
      if (!(value > 0.0)) {
        throw ConfigError("--dt must be \"auto\" or a positive number");
      }
      cfg.time.dt_auto = false;
      cfg.time.dt = value;
    }
  }
  if (flags.t_final) {
    if (!(*flags.t_final >= 0.0)) {
      throw ConfigError("--t-final must be nonnegative");
    }
    cfg.time.t_final = *flags.t_final;
  }
  if (flags.log_every) {
    if (*flags.log_every < 1) {
      throw ConfigError("--log-every must be at least 1");
    }
    cfg.time.log_every = *flags.log_every;
  }
  return cfg;
}

void write_run_report(const fs::path& out_dir, const std::string& command,
                      const ScenarioConfig& cfg,
                      const std::vector<std::string>& manifest,
                      double wall_seconds, const ordered_json& extra) {
  ordered_json report;
  report["schema_version"] = 1;
  report["command"] = command;
  report["scenario"] =
      cfg.scenario ? phsim::scenario_name(*cfg.scenario) : "";
  for (const auto& item : extra.items()) report[item.key()] = item.value();
  report["manifest"] = manifest;
  report["wall_time_seconds"] = wall_seconds;

  std::ofstream out(out_dir / "run_report.json", std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write run_report.json");
  }
  out << report.dump(2) << "\n";
}

int run_simulate(const ScenarioConfig& cfg, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  BuiltScenario built = phsim::build_scenario(cfg);
  phsim::CoupledSystem& system = *built.system;
  const SimOptions opts = phsim::sim_options(cfg);
  const double dt_used =
      opts.dt_auto ? system.auto_dt(opts) : opts.dt;

  const fs::path out(out_dir);
  fs::create_directories(out);
  std::vector<std::string> manifest;

  phsim::write_resolved_config(built.config,
                               (out / "config_resolved.json").string());
  manifest.push_back("config_resolved.json");

  phsim::CsvRowWriter trajectory((out / "trajectory.csv").string(),
                                 kTrajectoryHeader);
  manifest.push_back("trajectory.csv");

  std::optional<phsim::CsvRowWriter> edge_trace;
  if (built.plate && cfg.output.write_edge_trace) {
    std::string header = "t";
    for (int i = 0; i < built.plate->grid().n1; ++i) {
      header += ",w" + std::to_string(i);
    }
    edge_trace.emplace((out / "edge_b4_trace.csv").string(), header);
    manifest.push_back("edge_b4_trace.csv");
  }

  std::vector<double> edge_row;
  std::size_t logged = 0;
  const auto on_log = [&](const DiagnosticsRecord& rec) {
    const double row[10] = {rec.t,
                            rec.H,
                            rec.Hc,
                            rec.Hcl,
                            rec.dHcl,
                            rec.casimir_drift[0],
                            rec.casimir_drift[1],
                            rec.eq_error,
                            rec.u[0],
                            rec.u[1]};
    trajectory.write_row(row, 10);
    ++logged;
    if (edge_trace) {
      const phsim::Grid2D& grid = built.plate->grid();
      edge_row.clear();
      edge_row.push_back(rec.t);
      for (int i = 0; i < grid.n1; ++i) {
        edge_row.push_back(system.w()[grid.index(i, grid.n2 - 1)]);
      }
      edge_trace->write_row(edge_row);
    }
  };

  const std::vector<DiagnosticsRecord> records =
      phsim::simulate(system, opts, on_log);
  trajectory.close();
  if (edge_trace) edge_trace->close();

  if (cfg.output.write_fields) {
    if (built.plate) {
      const phsim::Grid2D& grid = built.plate->grid();
      phsim::write_csv(phsim::Field2D(grid, system.w()),
                       (out / "w_final.csv").string());
      phsim::write_csv(phsim::Field2D(grid, system.w_desired()),
                       (out / "w_desired.csv").string());
    } else {
      const phsim::Grid1D& grid = built.beam->grid();
      phsim::write_csv(phsim::Field1D(grid, system.w()),
                       (out / "w_final.csv").string());
      phsim::write_csv(phsim::Field1D(grid, system.w_desired()),
                       (out / "w_desired.csv").string());
    }
    manifest.push_back("w_final.csv");
    manifest.push_back("w_desired.csv");
  }

  if (built.plate && cfg.output.write_materials) {
    phsim::write_csv(built.plate->density().mu, (out / "mu.csv").string());
    phsim::write_csv(built.plate->density().Xi, (out / "xi.csv").string());
    phsim::write_csv(built.plate->g2(1), (out / "g21.csv").string());
    phsim::write_csv(built.plate->g2(2), (out / "g22.csv").string());
    manifest.push_back("mu.csv");
    manifest.push_back("xi.csv");
    manifest.push_back("g21.csv");
    manifest.push_back("g22.csv");
  }

  const DiagnosticsRecord& last = records.back();
  ordered_json extra;
  extra["dt"] = dt_used;
  extra["logged_records"] = logged;
  extra["final"] = ordered_json{{"t", last.t},
                                {"H", last.H},
                                {"Hc", last.Hc},
                                {"Hcl", last.Hcl},
                                {"eq_error", last.eq_error},
                                {"C1_drift", last.casimir_drift[0]},
                                {"C2_drift", last.casimir_drift[1]}};
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  manifest.push_back("run_report.json");
  write_run_report(out, "simulate", built.config, manifest, wall, extra);
  return 0;
}

void append_casimir_rows(const ScenarioConfig& cfg, ResidualReport& report) {
  if (!scenario_has_controller(*cfg.scenario)) {
    throw ConfigError(
        "the casimir check needs a controlled scenario (plate-casimir or "
        "beam-casimir)");
  }
  BuiltScenario built = phsim::build_scenario(cfg);
  const ResidualReport part =
      built.plate
          ? phsim::casimir_residuals_prop1(*built.plate,
                                           built.plate_synthesis->controller,
                                           built.plate_synthesis->spec)
          : phsim::casimir_residuals_prop2(*built.beam,
                                           built.beam_synthesis->controller,
                                           built.beam_synthesis->spec);
  for (const ResidualRow& row : part.rows) report.rows.push_back(row);
}

void append_gradient_rows(const ScenarioConfig& cfg, ResidualReport& report) {
  const phsim::GradientCheck check =
      scenario_is_plate(*cfg.scenario)
          ? phsim::gradient_consistency_plate(cfg.grid.n1)
          : phsim::gradient_consistency_beam(cfg.grid.n);
  report.rows.push_back(ResidualRow{"gradient_interior", check.max_deviation,
                                    check.tolerance, check.pass});
}

void append_decomposition_rows(const ScenarioConfig& cfg,
                               ResidualReport& report) {
  const phsim::SlopeCheck check = scenario_is_plate(*cfg.scenario)
                                      ? phsim::decomposition_convergence_2d()
                                      : phsim::decomposition_convergence_1d();
  report.rows.push_back(ResidualRow{"decomposition_slope_deficit",
                                    1.9 - check.slope, 0.0,
                                    check.slope >= 1.9});
  report.rows.push_back(ResidualRow{"decomposition_rounding_margin",
                                    check.floor - check.residual_fine, 0.0,
                                    check.residual_fine > check.floor});
}

void append_power_rows(const ScenarioConfig& cfg, ResidualReport& report) {
  const phsim::PowerCheck check = scenario_is_plate(*cfg.scenario)
                                      ? phsim::power_identity_plate()
                                      : phsim::power_identity_beam();
  report.rows.push_back(
      ResidualRow{"power_identity", check.max_rel_error, 1e-8, check.pass});
}

int run_verify(const ScenarioConfig& cfg, const std::string& out_dir,
               const std::string& check) {
  const auto start = std::chrono::steady_clock::now();
  if (!cfg.scenario) {
    throw ConfigError(
        "no scenario selected (use --scenario or the config's scenario key)");
  }
  if (check != "casimir" && check != "decomposition" && check != "gradient" &&
      check != "power" && check != "all") {
    throw ConfigError("unknown check '" + check +
                      "' (expected casimir, decomposition, gradient, power "
                      "or all)");
  }

  ResidualReport report;
  if (check == "casimir" ||
      (check == "all" && scenario_has_controller(*cfg.scenario))) {
    append_casimir_rows(cfg, report);
  }
  if (check == "gradient" || check == "all") {
    append_gradient_rows(cfg, report);
  }
  if (check == "decomposition" || check == "all") {
    append_decomposition_rows(cfg, report);
  }
  if (check == "power" || check == "all") {
    append_power_rows(cfg, report);
  }

  const fs::path out(out_dir);
  fs::create_directories(out);
  phsim::write_resolved_config(cfg, (out / "config_resolved.json").string());
  phsim::write_residual_report_csv(report,
                                   (out / "residual_report.csv").string());

  for (const ResidualRow& row : report.rows) {
    std::printf("%-32s %s  norm=%.3e  tol=%.3e\n", row.condition.c_str(),
                row.pass ? "PASS" : "FAIL", row.norm, row.tolerance);
  }

  ordered_json extra;
  extra["check"] = check;
  extra["all_pass"] = report.all_pass();
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_run_report(out, "verify", cfg,
                   {"config_resolved.json", "residual_report.csv",
                    "run_report.json"},
                   wall, extra);
  return report.all_pass() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Port-Hamiltonian plate and beam simulation toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string check = "all";
  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate a scenario and write CSVs");
  CLI::App* verify = app.add_subcommand(
      "verify", "run structural checks and write a residual report");
  add_common_flags(simulate, flags);
  add_common_flags(verify, flags);
  verify->add_option("--check", check,
                     "casimir | decomposition | gradient | power | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const ScenarioConfig cfg = resolve_config(flags);
    if (simulate->parsed()) return run_simulate(cfg, flags.out_dir);
    return run_verify(cfg, flags.out_dir, check);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const phsim::BlowupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
