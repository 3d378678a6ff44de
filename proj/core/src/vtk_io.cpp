#include "hydrofv/vtk_io.hpp"

#include <cstdio>
#include <fstream>

#include "hydrofv/errors.hpp"

namespace hydrofv {

namespace {

void append_scalar(std::string& out, const char* name, const Mesh& mesh,
                   const std::function<double(int)>& value) {
  out += std::string("SCALARS ") + name + " double 1\nLOOKUP_TABLE default\n";
  char buf[40];
  for (int c = 0; c < mesh.n_cells(); ++c) {
    std::snprintf(buf, sizeof buf, "%.17g\n", value(c));
    out += buf;
  }
}

}  // namespace

std::string field_vtk_text(const Mesh& mesh, const FlowField& field, std::span<const double> ic,
                           double h_eps) {
  const int nc = mesh.n_cells();
  const int nv = mesh.n_vertices();
  std::string out;
  out.reserve(static_cast<std::size_t>(nc) * 200 + 256);
  out += "# vtk DataFile Version 3.0\n";
  char buf[96];
  std::snprintf(buf, sizeof buf, "hydrofv snapshot t=%.17g\n", field.t);
  out += buf;
  out += "ASCII\nDATASET UNSTRUCTURED_GRID\n";

  std::snprintf(buf, sizeof buf, "POINTS %d double\n", nv);
  out += buf;
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", v.pos.x, v.pos.y);
    out += buf;
  }

  std::snprintf(buf, sizeof buf, "CELLS %d %d\n", nc, 4 * nc);
  out += buf;
  for (const auto& cell : mesh.cells) {
    std::snprintf(buf, sizeof buf, "3 %d %d %d\n", cell.vertices[0], cell.vertices[1],
                  cell.vertices[2]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "CELL_TYPES %d\n", nc);
  out += buf;
  for (int c = 0; c < nc; ++c) out += "5\n";

  std::snprintf(buf, sizeof buf, "CELL_DATA %d\n", nc);
  out += buf;
  auto depth = [&](int c) { return field.w[c] - mesh.cells[c].b_center; };
  append_scalar(out, "w", mesh, [&](int c) { return field.w[c]; });
  append_scalar(out, "h", mesh, depth);
  append_scalar(out, "p", mesh, [&](int c) { return field.p[c]; });
  append_scalar(out, "q", mesh, [&](int c) { return field.q[c]; });
  append_scalar(out, "u", mesh, [&](int c) {
    const double h = depth(c);
    return h >= h_eps ? field.p[c] / h : 0.0;
  });
  append_scalar(out, "v", mesh, [&](int c) {
    const double h = depth(c);
    return h >= h_eps ? field.q[c] / h : 0.0;
  });
  append_scalar(out, "B", mesh, [&](int c) { return mesh.cells[c].b_center; });
  append_scalar(out, "Ic", mesh, [&](int c) { return ic.empty() ? 0.0 : ic[c]; });
  return out;
}

void write_field_vtk(const Mesh& mesh, const FlowField& field, std::span<const double> ic,
                     const std::string& path, double h_eps) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open \"" + path + "\" for writing");
  f << field_vtk_text(mesh, field, ic, h_eps);
  if (!f) throw IoError("write failed for \"" + path + "\"");
}

}  // namespace hydrofv
