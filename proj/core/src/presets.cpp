#include "hydrofv/presets.hpp"

#include "hydrofv/errors.hpp"

namespace hydrofv {

namespace {

RunConfig rect_base(double lx, double ly, int nx, int ny) {
  RunConfig c;
  c.mesh_source = MeshSource::kGenerate;
  c.lx = lx;
  c.ly = ly;
  c.nx = nx;
  c.ny = ny;
  return c;
}

// 21.945 x 1 m plane falling toward the outlet at x = L, mean cell area
// ~3.9e-3 m^2; rainfall left as a user input.
RunConfig slope_runoff() {
  RunConfig c = rect_base(21.945, 1.0, 256, 11);
  c.bottom = BottomKind::kSlope;
  c.slope = 0.04;
  c.init = InitKind::kDry;
  c.manning = 0.48;
  c.side_tags[1] = BoundaryTag::kOutflow;  // right
  c.t_end = 3600.0;
  c.output_every = 10.0;
  c.outdir = "out_slope_runoff";
  return c;
}

// [0,2]x[0,1] closed basin, 0.1 m of still water over an infiltrating flat
// bed, mean cell area ~6.3735e-4 m^2.
RunConfig conservation(bool two_layer) {
  RunConfig c = rect_base(2.0, 1.0, 56, 28);
  c.bottom = BottomKind::kFlat;
  c.init = InitKind::kUniformDepth;
  c.init_value = 0.1;
  c.manning = 0.0;
  c.t_end = 7200.0;
  c.output_every = 60.0;
  const SoilLayer sandy_loam{1.09 * kCmPerHourToMs, 0.1101, 0.247};
  const SoilLayer silt_loam{0.65 * kCmPerHourToMs, 0.167, 0.340};
  if (two_layer) {
    c.soil.kind = SoilConfig::Kind::kTwoLayer;
    c.soil.layer1 = sandy_loam;
    c.soil.layer2 = silt_loam;
    c.soil.d1 = 0.001;  // 0.1 cm
    c.outdir = "out_conservation_two_layer";
  } else {
    c.soil.kind = SoilConfig::Kind::kOneLayer;
    c.soil.layer1 = sandy_loam;
    c.outdir = "out_conservation_one_layer";
  }
  return c;
}

// [0,10]x[0,8] variable basin: 5 min of 500 mm/h rain over an infiltrating
// soil, walls on the sides and uphill boundary, outflow downhill (y = 0).
RunConfig complex_basin() {
  RunConfig c = rect_base(10.0, 8.0, 79, 63);
  c.bottom = BottomKind::kSineBasin;
  c.init = InitKind::kDry;
  c.manning = 0.013;
  c.side_tags[2] = BoundaryTag::kOutflow;  // bottom edge y = 0 is the downstream side
  c.rain.push_back({0.0, 300.0, 500.0 * kMmPerHourToMs});
  c.soil.kind = SoilConfig::Kind::kOneLayer;
  c.soil.layer1 = {7.0 * kMmPerHourToMs, 0.050, 0.125};
  c.t_end = 480.0;
  c.output_every = 60.0;
  c.outdir = "out_complex_basin";
  return c;
}

// still-water fixture over the complex-basin topography
RunConfig lake_at_rest() {
  RunConfig c = rect_base(10.0, 8.0, 43, 35);
  c.bottom = BottomKind::kSineBasin;
  c.init = InitKind::kUniformLevel;
  c.init_value = 1.2;
  c.manning = 0.0;
  c.t_end = 10.0;
  c.output_every = 1.0;
  c.outdir = "out_lake_at_rest";
  return c;
}

}  // namespace

RunConfig scenario_preset(const std::string& name) {
  if (name == "slope_runoff") return slope_runoff();
  if (name == "conservation_one_layer") return conservation(false);
  if (name == "conservation_two_layer") return conservation(true);
  if (name == "complex_basin") return complex_basin();
  if (name == "lake_at_rest") return lake_at_rest();
  throw ConfigError("unknown preset \"" + name + "\"");
}

std::vector<std::string> preset_names() {
  return {"slope_runoff", "conservation_one_layer", "conservation_two_layer", "complex_basin",
          "lake_at_rest"};
}

}  // namespace hydrofv
