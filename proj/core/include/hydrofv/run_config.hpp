#pragma once

#include <array>
#include <string>
#include <vector>

#include "hydrofv/infiltration.hpp"
#include "hydrofv/mesh.hpp"
#include "hydrofv/solver.hpp"

namespace hydrofv {

enum class MeshSource : std::uint8_t { kGenerate, kFile };
enum class BottomKind : std::uint8_t { kFlat, kSlope, kSineBasin, kFile };
enum class InitKind : std::uint8_t { kDry, kUniformDepth, kUniformLevel, kFile };

struct SoilConfig {
  enum class Kind : std::uint8_t { kNone, kOneLayer, kTwoLayer } kind = Kind::kNone;
  SoilLayer layer1{};
  SoilLayer layer2{};
  double d1 = 0.0;

  bool operator==(const SoilConfig&) const = default;
};

/// Flat key-value run description; parse_config/serialize_config round-trip it.
struct RunConfig {
  MeshSource mesh_source = MeshSource::kGenerate;
  std::string node_path, ele_path, tag_path;

  double lx = 1.0, ly = 1.0;
  int nx = 1, ny = 1;

  BottomKind bottom = BottomKind::kFlat;
  double slope = 0.0;  // for kSlope: B(x) = slope * (lx - x)
  std::string bottom_path;

  InitKind init = InitKind::kDry;
  double init_value = 0.0;  // depth or level, by InitKind
  std::string init_path;

  std::vector<RainInterval> rain;
  SoilConfig soil;
  double manning = 0.0;

  // left, right, bottom, top (generated meshes)
  std::array<BoundaryTag, 4> side_tags{BoundaryTag::kWall, BoundaryTag::kWall, BoundaryTag::kWall,
                                       BoundaryTag::kWall};

  double cfl = 0.25;
  double h_eps = 1e-6;
  double u_max = 100.0;
  double dt_max = 1.0;

  double t_end = 0.0;
  double output_every = 0.0;  // 0: only the initial and final snapshots
  std::string outdir = "out";

  bool operator==(const RunConfig&) const = default;
};

/// Parses "key = value" lines ('#' comments). Values accept unit suffixes
/// (m, cm, mm, m/s, cm/h, mm/h, s, min, h) converted to SI at parse time.
/// Unknown keys, malformed values, and overlapping rain intervals are
/// rejected with the key name and line number.
RunConfig parse_config(const std::string& text);

/// Canonical config text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Applies one "key=value" (or "key = value ...") override line.
void apply_override(RunConfig& config, const std::string& line);

/// Parses a number with an optional unit suffix into SI units.
double parse_quantity(const std::string& token);

inline constexpr double kCmPerHourToMs = 1.0 / 360000.0;
inline constexpr double kMmPerHourToMs = 1.0 / 3600000.0;

}  // namespace hydrofv
