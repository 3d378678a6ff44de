#include "hydrofv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hydrofv/errors.hpp"
#include "hydrofv/vtk_io.hpp"

namespace hydrofv {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<double> read_values(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<double> v;
  double x;
  while (in >> x) v.push_back(x);
  return v;
}

BottomFn bottom_function(const RunConfig& c) {
  switch (c.bottom) {
    case BottomKind::kFlat:
      return [](double, double) { return 0.0; };
    case BottomKind::kSlope:
      return [s = c.slope, lx = c.lx](double x, double) { return s * (lx - x); };
    case BottomKind::kSineBasin:
      return [](double x, double y) {
        constexpr double pi = std::numbers::pi;
        return 0.01 * y + 0.01 * std::abs(x - 0.5) - 0.01 * std::sin(pi * x / 2.0) -
               0.01 * std::sin(pi * y / 2.0) + 1.0;
      };
    case BottomKind::kFile:
      throw ConfigError("bottom = file applies only to generated meshes via per-vertex values");
  }
  throw ConfigError("unknown bottom kind");
}

}  // namespace

Scenario build_scenario(const RunConfig& c) {
  Scenario s;

  Mesh mesh;
  if (c.mesh_source == MeshSource::kGenerate) {
    if (c.bottom == BottomKind::kFile) {
      const std::vector<double> b = read_values(c.bottom_path);
      std::size_t expected = static_cast<std::size_t>(c.nx + 1) * (c.ny + 1);
      if (b.size() != expected)
        throw ConfigError("bottom file has " + std::to_string(b.size()) + " values, expected " +
                          std::to_string(expected));
      const int nxp = c.nx + 1;
      auto fn = [&b, nxp, lx = c.lx, ly = c.ly, nx = c.nx, ny = c.ny](double x, double y) {
        const int i = static_cast<int>(std::lround(x / lx * nx));
        const int j = static_cast<int>(std::lround(y / ly * ny));
        return b[static_cast<std::size_t>(j) * nxp + i];
      };
      mesh = generate_rect_mesh(c.lx, c.ly, c.nx, c.ny, fn);
    } else {
      mesh = generate_rect_mesh(c.lx, c.ly, c.nx, c.ny, bottom_function(c));
    }
    tag_rect_side(mesh, Side::kLeft, c.side_tags[0], c.lx, c.ly);
    tag_rect_side(mesh, Side::kRight, c.side_tags[1], c.lx, c.ly);
    tag_rect_side(mesh, Side::kBottom, c.side_tags[2], c.lx, c.ly);
    tag_rect_side(mesh, Side::kTop, c.side_tags[3], c.lx, c.ly);
  } else {
    mesh = load_mesh(slurp(c.node_path), slurp(c.ele_path));
    if (!c.tag_path.empty()) apply_boundary_tags(mesh, slurp(c.tag_path));
  }

  const std::size_t nc = static_cast<std::size_t>(mesh.n_cells());
  FlowField field(nc);
  switch (c.init) {
    case InitKind::kDry:
      for (std::size_t j = 0; j < nc; ++j) field.w[j] = mesh.cells[j].b_center;
      break;
    case InitKind::kUniformDepth:
      for (std::size_t j = 0; j < nc; ++j) field.w[j] = mesh.cells[j].b_center + c.init_value;
      break;
    case InitKind::kUniformLevel:
      for (std::size_t j = 0; j < nc; ++j)
        field.w[j] = std::max(mesh.cells[j].b_center, c.init_value);
      break;
    case InitKind::kFile: {
      const std::vector<double> w = read_values(c.init_path);
      if (w.size() != nc)
        throw ConfigError("initial condition file has " + std::to_string(w.size()) +
                          " values for " + std::to_string(nc) + " cells");
      for (std::size_t j = 0; j < nc; ++j) field.w[j] = std::max(w[j], mesh.cells[j].b_center);
      break;
    }
  }

  s.mesh = std::make_shared<const Mesh>(std::move(mesh));
  s.initial = std::move(field);
  s.params = SolverParams{c.cfl, c.h_eps, c.u_max, c.dt_max, c.manning};
  s.rain = RainSchedule(c.rain);
  switch (c.soil.kind) {
    case SoilConfig::Kind::kNone:
      break;
    case SoilConfig::Kind::kOneLayer:
      s.soil = SoilModel::one_layer(c.soil.layer1);
      break;
    case SoilConfig::Kind::kTwoLayer:
      s.soil = SoilModel::two_layer(c.soil.layer1, c.soil.layer2, c.soil.d1);
      break;
  }
  return s;
}

std::string ledger_csv(const std::vector<LedgerRow>& rows) {
  std::string out = "t_s,surface_m3,infiltrated_m3,rain_in_m3,outflow_m3,clamp_m3,residual_m3\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10e,%.10e,%.10e,%.10e,%.10e,%.10e,%.10e\n", r.t,
                  r.ledger.surface_volume, r.ledger.infiltrated_volume, r.ledger.rain_in,
                  r.ledger.outflow_out, r.ledger.clamp_correction, r.ledger.residual());
    out += buf;
  }
  return out;
}

RunOutputs run_scenario(const RunConfig& config, bool write_files) {
  Scenario s = build_scenario(config);
  Simulation sim(s.mesh, std::move(s.initial), s.params, s.rain, s.soil);

  bool has_outflow = false;
  for (int e : s.mesh->boundary_edges)
    if (s.mesh->edge_tag[e] == BoundaryTag::kOutflow) has_outflow = true;

  std::vector<double> output_times{0.0};
  if (config.output_every > 0.0) {
    for (int k = 1; k * config.output_every < config.t_end; ++k)
      output_times.push_back(k * config.output_every);
  }
  if (config.t_end > 0.0) output_times.push_back(config.t_end);

  const std::filesystem::path outdir(config.outdir);
  if (write_files) std::filesystem::create_directories(outdir);

  RunOutputs out;
  int snapshot = 0;
  for (double t_out : output_times) {
    sim.advance_to(t_out);
    if (has_outflow) out.hydrograph.push(sim.time(), sim.outlet_discharge());
    out.ledger_rows.push_back({sim.time(), sim.ledger()});
    if (write_files) {
      char name[32];
      std::snprintf(name, sizeof name, "field_%06d.vtk", snapshot);
      write_field_vtk(sim.mesh(), sim.field(), sim.cumulative_infiltration(),
                      (outdir / name).string(), s.params.h_eps);
    }
    ++snapshot;
  }

  if (write_files) {
    if (has_outflow) {
      std::ofstream f(outdir / "hydrograph.csv");
      f << write_hydrograph_csv(out.hydrograph);
    }
    std::ofstream f(outdir / "ledger.csv");
    f << ledger_csv(out.ledger_rows);
  }

  out.final_field = sim.field();
  out.final_ic.assign(sim.cumulative_infiltration().begin(), sim.cumulative_infiltration().end());
  return out;
}

}  // namespace hydrofv
