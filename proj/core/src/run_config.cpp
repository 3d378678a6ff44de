#include "hydrofv/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "hydrofv/errors.hpp"

namespace hydrofv {

namespace {

const std::pair<const char*, double> kUnits[] = {
    {"m", 1.0},           {"cm", 0.01},        {"mm", 0.001},
    {"m/s", 1.0},         {"cm/h", kCmPerHourToMs}, {"mm/h", kMmPerHourToMs},
    {"s", 1.0},           {"min", 60.0},       {"h", 3600.0},
};

[[noreturn]] void bad_value(const std::string& key, int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ", key \"" + key + "\": " + msg);
}

}  // namespace

double parse_quantity(const std::string& token) {
  std::size_t used = 0;
  double value;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number from \"" + token + "\"");
  }
  const std::string suffix = token.substr(used);
  if (suffix.empty()) return value;
  for (const auto& [name, factor] : kUnits)
    if (suffix == name) return value * factor;
  throw ConfigError("unknown unit suffix \"" + suffix + "\" in \"" + token + "\"");
}

namespace {

double quantity_field(std::istringstream& in, const std::string& key, int line) {
  std::string tok;
  if (!(in >> tok)) bad_value(key, line, "missing value");
  try {
    return parse_quantity(tok);
  } catch (const ConfigError& e) {
    bad_value(key, line, e.what());
  }
}

double number_field(std::istringstream& in, const std::string& key, int line) {
  double v;
  if (!(in >> v)) bad_value(key, line, "expected a plain number");
  return v;
}

BoundaryTag tag_field(const std::string& word, const std::string& key, int line) {
  if (word == "WALL") return BoundaryTag::kWall;
  if (word == "OUTFLOW") return BoundaryTag::kOutflow;
  bad_value(key, line, "unknown boundary tag \"" + word + "\"");
}

SoilLayer layer_field(std::istringstream& in, const std::string& key, int line) {
  std::string ks, psi, dtheta;
  if (!(in >> ks >> psi >> dtheta)) bad_value(key, line, "expected \"Ks psi dtheta\"");
  SoilLayer l;
  try {
    l.ks = parse_quantity(ks);
    l.psi = parse_quantity(psi);
    l.dtheta = parse_quantity(dtheta);
  } catch (const ConfigError& e) {
    bad_value(key, line, e.what());
  }
  if (!(l.ks > 0.0)) bad_value(key, line, "Ks must be positive");
  if (l.psi < 0.0) bad_value(key, line, "psi must be nonnegative");
  if (!(l.dtheta > 0.0 && l.dtheta < 1.0)) bad_value(key, line, "dtheta must be in (0,1)");
  return l;
}

void handle_key(RunConfig& c, const std::string& key, std::istringstream& in, int line) {
  std::string word;
  if (key == "mesh") {
    if (!(in >> word)) bad_value(key, line, "missing value");
    if (word == "generate") {
      c.mesh_source = MeshSource::kGenerate;
    } else if (word == "file") {
      c.mesh_source = MeshSource::kFile;
      if (!(in >> c.node_path >> c.ele_path)) bad_value(key, line, "expected node and element paths");
      in >> c.tag_path;  // optional
    } else {
      bad_value(key, line, "expected \"generate\" or \"file ...\"");
    }
  } else if (key == "domain") {
    c.lx = quantity_field(in, key, line);
    c.ly = quantity_field(in, key, line);
    if (!(c.lx > 0.0 && c.ly > 0.0)) bad_value(key, line, "domain dimensions must be positive");
  } else if (key == "nx" || key == "ny") {
    const double v = number_field(in, key, line);
    if (v < 1.0 || v != static_cast<int>(v)) bad_value(key, line, "expected a positive integer");
    (key == "nx" ? c.nx : c.ny) = static_cast<int>(v);
  } else if (key == "bottom") {
    if (!(in >> word)) bad_value(key, line, "missing value");
    if (word == "flat") {
      c.bottom = BottomKind::kFlat;
    } else if (word == "slope") {
      c.bottom = BottomKind::kSlope;
      c.slope = quantity_field(in, key, line);
    } else if (word == "sine_basin") {
      c.bottom = BottomKind::kSineBasin;
    } else if (word == "file") {
      c.bottom = BottomKind::kFile;
      if (!(in >> c.bottom_path)) bad_value(key, line, "missing path");
    } else {
      bad_value(key, line, "unknown bottom \"" + word + "\"");
    }
  } else if (key == "init_depth") {
    if (!(in >> word)) bad_value(key, line, "missing value");
    if (word == "dry") {
      c.init = InitKind::kDry;
      c.init_value = 0.0;
    } else if (word == "level") {
      c.init = InitKind::kUniformLevel;
      c.init_value = quantity_field(in, key, line);
    } else if (word == "file") {
      c.init = InitKind::kFile;
      if (!(in >> c.init_path)) bad_value(key, line, "missing path");
    } else {
      c.init = InitKind::kUniformDepth;
      try {
        c.init_value = parse_quantity(word);
      } catch (const ConfigError& e) {
        bad_value(key, line, e.what());
      }
      if (c.init_value < 0.0) bad_value(key, line, "depth must be nonnegative");
    }
  } else if (key == "rain") {
    RainInterval iv;
    iv.t_start = quantity_field(in, key, line);
    iv.t_end = quantity_field(in, key, line);
    iv.rate = quantity_field(in, key, line);
    if (iv.t_start < 0.0 || iv.t_end < iv.t_start || iv.rate < 0.0)
      bad_value(key, line, "expected t0 <= t1 and rate >= 0");
    for (const auto& other : c.rain)
      if (iv.t_start < other.t_end && other.t_start < iv.t_end)
        bad_value(key, line, "overlapping rain intervals");
    c.rain.push_back(iv);
  } else if (key == "soil") {
    if (!(in >> word)) bad_value(key, line, "missing value");
    if (word == "none") {
      c.soil = SoilConfig{};
    } else if (word == "silt_loam") {
      c.soil.kind = SoilConfig::Kind::kOneLayer;
      c.soil.layer1 = {0.65 * kCmPerHourToMs, 0.167, 0.340};
    } else if (word == "sandy_loam") {
      c.soil.kind = SoilConfig::Kind::kOneLayer;
      c.soil.layer1 = {1.09 * kCmPerHourToMs, 0.1101, 0.247};
    } else if (word == "one_layer") {
      c.soil.kind = SoilConfig::Kind::kOneLayer;
    } else if (word == "two_layer") {
      c.soil.kind = SoilConfig::Kind::kTwoLayer;
    } else {
      bad_value(key, line, "unknown soil \"" + word + "\"");
    }
  } else if (key == "layer1") {
    c.soil.layer1 = layer_field(in, key, line);
    if (in >> word) {
      try {
        c.soil.d1 = parse_quantity(word);
      } catch (const ConfigError& e) {
        bad_value(key, line, e.what());
      }
      if (!(c.soil.d1 > 0.0)) bad_value(key, line, "d1 must be positive");
    }
  } else if (key == "layer2") {
    c.soil.layer2 = layer_field(in, key, line);
  } else if (key == "manning") {
    c.manning = number_field(in, key, line);
    if (c.manning < 0.0) bad_value(key, line, "Manning coefficient must be nonnegative");
  } else if (key == "boundary") {
    std::string side, tag;
    if (!(in >> side >> tag)) bad_value(key, line, "expected \"side TAG\"");
    int idx = -1;
    if (side == "left") idx = 0;
    else if (side == "right") idx = 1;
    else if (side == "bottom") idx = 2;
    else if (side == "top") idx = 3;
    else bad_value(key, line, "unknown side \"" + side + "\"");
    c.side_tags[static_cast<std::size_t>(idx)] = tag_field(tag, key, line);
  } else if (key == "cfl") {
    c.cfl = number_field(in, key, line);
    if (!(c.cfl > 0.0)) bad_value(key, line, "cfl must be positive");
  } else if (key == "h_eps") {
    c.h_eps = quantity_field(in, key, line);
    if (!(c.h_eps > 0.0)) bad_value(key, line, "h_eps must be positive");
  } else if (key == "u_max") {
    c.u_max = quantity_field(in, key, line);
    if (!(c.u_max > 0.0)) bad_value(key, line, "u_max must be positive");
  } else if (key == "dt_max") {
    c.dt_max = quantity_field(in, key, line);
    if (!(c.dt_max > 0.0)) bad_value(key, line, "dt_max must be positive");
  } else if (key == "t_end") {
    c.t_end = quantity_field(in, key, line);
    if (c.t_end < 0.0) bad_value(key, line, "t_end must be nonnegative");
  } else if (key == "output_every") {
    c.output_every = quantity_field(in, key, line);
    if (c.output_every < 0.0) bad_value(key, line, "output_every must be nonnegative");
  } else if (key == "outdir") {
    if (!(in >> c.outdir)) bad_value(key, line, "missing value");
  } else {
    throw ConfigError("config line " + std::to_string(line) + ": unknown key \"" + key + "\"");
  }

  if (in >> word)
    bad_value(key, line, "trailing token \"" + word + "\"");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool has_mesh = false, has_t_end = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto eq = raw.find('=');
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected \"key = value\"");
    std::string key = raw.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char ch) { return std::isspace(ch); }),
              key.end());
    std::istringstream fields(raw.substr(eq + 1));
    handle_key(c, key, fields, line_no);
    if (key == "mesh") has_mesh = true;
    if (key == "t_end") has_t_end = true;
  }
  if (!has_mesh) throw ConfigError("missing required key \"mesh\"");
  if (!has_t_end) throw ConfigError("missing required key \"t_end\"");
  if (c.soil.kind == SoilConfig::Kind::kOneLayer && !(c.soil.layer1.ks > 0.0))
    throw ConfigError("soil = one_layer requires a layer1 line");
  if (c.soil.kind == SoilConfig::Kind::kTwoLayer &&
      (!(c.soil.layer1.ks > 0.0) || !(c.soil.layer2.ks > 0.0) || !(c.soil.d1 > 0.0)))
    throw ConfigError("soil = two_layer requires layer1 (with d1) and layer2 lines");
  std::sort(c.rain.begin(), c.rain.end(),
            [](const RainInterval& a, const RainInterval& b) { return a.t_start < b.t_start; });
  return c;
}

void apply_override(RunConfig& config, const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw ConfigError("override must look like key=value: \"" + line + "\"");
  std::string key = line.substr(0, eq);
  key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char ch) { return std::isspace(ch); }),
            key.end());
  std::istringstream fields(line.substr(eq + 1));
  handle_key(config, key, fields, 0);
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* tag_name(BoundaryTag t) { return t == BoundaryTag::kOutflow ? "OUTFLOW" : "WALL"; }

}  // namespace

std::string serialize_config(const RunConfig& c) {
  std::string out;
  if (c.mesh_source == MeshSource::kGenerate) {
    out += "mesh = generate\n";
    out += "domain = " + fmt(c.lx) + " " + fmt(c.ly) + "\n";
    out += "nx = " + std::to_string(c.nx) + "\n";
    out += "ny = " + std::to_string(c.ny) + "\n";
  } else {
    out += "mesh = file " + c.node_path + " " + c.ele_path;
    if (!c.tag_path.empty()) out += " " + c.tag_path;
    out += "\n";
  }
  switch (c.bottom) {
    case BottomKind::kFlat: out += "bottom = flat\n"; break;
    case BottomKind::kSlope: out += "bottom = slope " + fmt(c.slope) + "\n"; break;
    case BottomKind::kSineBasin: out += "bottom = sine_basin\n"; break;
    case BottomKind::kFile: out += "bottom = file " + c.bottom_path + "\n"; break;
  }
  switch (c.init) {
    case InitKind::kDry: out += "init_depth = dry\n"; break;
    case InitKind::kUniformDepth: out += "init_depth = " + fmt(c.init_value) + "\n"; break;
    case InitKind::kUniformLevel: out += "init_depth = level " + fmt(c.init_value) + "\n"; break;
    case InitKind::kFile: out += "init_depth = file " + c.init_path + "\n"; break;
  }
  for (const auto& iv : c.rain)
    out += "rain = " + fmt(iv.t_start) + " " + fmt(iv.t_end) + " " + fmt(iv.rate) + "\n";
  if (c.soil.kind != SoilConfig::Kind::kNone) {
    out += (c.soil.kind == SoilConfig::Kind::kTwoLayer) ? "soil = two_layer\n" : "soil = one_layer\n";
    out += "layer1 = " + fmt(c.soil.layer1.ks) + " " + fmt(c.soil.layer1.psi) + " " +
           fmt(c.soil.layer1.dtheta);
    if (c.soil.kind == SoilConfig::Kind::kTwoLayer) out += " " + fmt(c.soil.d1);
    out += "\n";
    if (c.soil.kind == SoilConfig::Kind::kTwoLayer)
      out += "layer2 = " + fmt(c.soil.layer2.ks) + " " + fmt(c.soil.layer2.psi) + " " +
             fmt(c.soil.layer2.dtheta) + "\n";
  }
  out += "manning = " + fmt(c.manning) + "\n";
  const char* sides[4] = {"left", "right", "bottom", "top"};
  for (int i = 0; i < 4; ++i)
    out += std::string("boundary = ") + sides[i] + " " + tag_name(c.side_tags[static_cast<std::size_t>(i)]) + "\n";
  out += "cfl = " + fmt(c.cfl) + "\n";
  out += "h_eps = " + fmt(c.h_eps) + "\n";
  out += "u_max = " + fmt(c.u_max) + "\n";
  out += "dt_max = " + fmt(c.dt_max) + "\n";
  out += "t_end = " + fmt(c.t_end) + "\n";
  out += "output_every = " + fmt(c.output_every) + "\n";
  out += "outdir = " + c.outdir + "\n";
  return out;
}

}  // namespace hydrofv
