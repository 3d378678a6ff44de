// Command-line front end: run configs, built-in presets, hydrograph RMSE,
// Manning calibration, and mesh inspection.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydrofv/calibrate.hpp"
#include "hydrofv/errors.hpp"
#include "hydrofv/presets.hpp"
#include "hydrofv/scenario.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw hydrofv::IoError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void report_run(const hydrofv::RunConfig& cfg, const hydrofv::RunOutputs& out) {
  const auto& last = out.ledger_rows.back();
  std::printf("run finished at t = %.6g s (%zu outputs in %s)\n", last.t,
              out.ledger_rows.size(), cfg.outdir.c_str());
  std::printf("  surface %.6e m^3, infiltrated %.6e m^3, outflow %.6e m^3\n",
              last.ledger.surface_volume, last.ledger.infiltrated_volume,
              last.ledger.outflow_out);
  std::printf("  rain in %.6e m^3, clamp %.3e m^3, ledger residual %.3e m^3\n",
              last.ledger.rain_in, last.ledger.clamp_correction, last.ledger.residual());
  if (out.hydrograph.size() > 0)
    std::printf("  final outlet discharge %.6e m^3/s\n", out.hydrograph.q.back());
}

void mesh_info(const hydrofv::RunConfig& cfg) {
  hydrofv::Scenario s = hydrofv::build_scenario(cfg);
  const hydrofv::Mesh& m = *s.mesh;
  int walls = 0, outflows = 0;
  for (int e : m.boundary_edges)
    (m.edge_tag[e] == hydrofv::BoundaryTag::kOutflow ? outflows : walls)++;
  double b_min = m.vertices[0].b, b_max = m.vertices[0].b;
  for (const auto& v : m.vertices) {
    b_min = std::min(b_min, v.b);
    b_max = std::max(b_max, v.b);
  }
  double worst_closure = 0.0;
  for (int c = 0; c < m.n_cells(); ++c) {
    double sx = 0.0, sy = 0.0, perim = 0.0;
    for (int k = 0; k < 3; ++k) {
      sx += m.slot_length[3 * c + k] * m.slot_inward[3 * c + k].x;
      sy += m.slot_length[3 * c + k] * m.slot_inward[3 * c + k].y;
      perim += m.slot_length[3 * c + k];
    }
    worst_closure = std::max(worst_closure, std::hypot(sx, sy) / perim);
  }
  std::printf("vertices: %d\nedges: %d (%zu boundary: %d WALL, %d OUTFLOW)\ncells: %d\n",
              m.n_vertices(), m.n_edges(), m.boundary_edges.size(), walls, outflows, m.n_cells());
  std::printf("total area: %.10e m^2\naverage cell area: %.10e m^2\n", m.total_area(),
              m.total_area() / m.n_cells());
  std::printf("bottom range: [%.6g, %.6g] m\n", b_min, b_max);
  std::printf("worst edge-normal closure (|sum l n| / perimeter): %.3e\n", worst_closure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hydrofv: coupled surface runoff / infiltration simulator"};
  app.require_subcommand(1);

  std::string config_path, sim_path, obs_path, preset_name, n_grid_arg;
  std::vector<std::string> overrides;
  bool print_only = false;

  auto* run_cmd = app.add_subcommand("run", "run a simulation from a config file");
  run_cmd->add_option("config", config_path, "config file")->required();

  auto* preset_cmd = app.add_subcommand("preset", "run a built-in scenario");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  preset_cmd->add_option("--override", overrides, "key=value config override (repeatable)");
  preset_cmd->add_flag("--print", print_only, "print the preset config instead of running");

  auto* rmse_cmd = app.add_subcommand("rmse", "RMSE between two hydrograph CSVs");
  rmse_cmd->add_option("sim", sim_path, "simulated hydrograph CSV")->required();
  rmse_cmd->add_option("obs", obs_path, "observed hydrograph CSV")->required();

  auto* cal_cmd = app.add_subcommand("calibrate", "grid-search the Manning coefficient");
  cal_cmd->add_option("config", config_path, "config file")->required();
  cal_cmd->add_option("obs", obs_path, "observed hydrograph CSV")->required();
  cal_cmd->add_option("--n-grid", n_grid_arg, "comma-separated Manning values")->required();

  auto* info_cmd = app.add_subcommand("mesh-info", "print mesh statistics for a config");
  info_cmd->add_option("config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const hydrofv::RunConfig cfg = hydrofv::parse_config(slurp(config_path));
      report_run(cfg, hydrofv::run_scenario(cfg, /*write_files=*/true));
    } else if (preset_cmd->parsed()) {
      hydrofv::RunConfig cfg = hydrofv::scenario_preset(preset_name);
      for (const auto& o : overrides) hydrofv::apply_override(cfg, o);
      if (print_only) {
        std::cout << hydrofv::serialize_config(cfg);
      } else {
        report_run(cfg, hydrofv::run_scenario(cfg, /*write_files=*/true));
      }
    } else if (rmse_cmd->parsed()) {
      const auto sim = hydrofv::read_hydrograph_csv(slurp(sim_path));
      const auto obs = hydrofv::read_hydrograph_csv(slurp(obs_path));
      std::printf("%.10e\n", hydrofv::rmse(sim, obs));
    } else if (cal_cmd->parsed()) {
      const hydrofv::RunConfig cfg = hydrofv::parse_config(slurp(config_path));
      const auto obs = hydrofv::read_hydrograph_csv(slurp(obs_path));
      std::vector<double> grid;
      std::stringstream ss(n_grid_arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
      const auto result = hydrofv::calibrate_manning(cfg, obs, grid);
      std::printf("n,rmse_m3s\n");
      for (const auto& row : result.table) std::printf("%.6g,%.10e\n", row.n, row.rmse);
      std::printf("best n = %.6g\n", result.n_best);
    } else if (info_cmd->parsed()) {
      mesh_info(hydrofv::parse_config(slurp(config_path)));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
