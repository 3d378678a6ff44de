#include "hydrofv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "hydrofv/errors.hpp"

namespace hydrofv {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double triangle_signed_area(Vec2 p0, Vec2 p1, Vec2 p2) {
  return 0.5 * cross(p1 - p0, p2 - p0);
}

// Builds edges, orients triangles counter-clockwise, and fills every geometry
// cache. `cells[*].vertices` must already be set.
void finalize_mesh(Mesh& m) {
  const int nc = m.n_cells();

  // orientation + degeneracy check
  for (int c = 0; c < nc; ++c) {
    auto& cell = m.cells[c];
    const auto [a, b, d] = cell.vertices;
    if (a == b || b == d || a == d)
      throw MeshError("degenerate cell " + std::to_string(c) + ": repeated vertex index");
    double sa = triangle_signed_area(m.vertices[a].pos, m.vertices[b].pos, m.vertices[d].pos);
    if (sa < 0.0) {
      std::swap(cell.vertices[1], cell.vertices[2]);
      sa = -sa;
    }
    if (!(sa > 0.0))
      throw MeshError("degenerate cell " + std::to_string(c) + ": zero area");
    cell.area = sa;
    const Vec2 p0 = m.vertices[cell.vertices[0]].pos;
    const Vec2 p1 = m.vertices[cell.vertices[1]].pos;
    const Vec2 p2 = m.vertices[cell.vertices[2]].pos;
    cell.centroid = {(p0.x + p1.x + p2.x) / 3.0, (p0.y + p1.y + p2.y) / 3.0};
  }

  // edge table; first-encounter cell becomes the left cell and defines the
  // normal as its outward direction, so `normal` always points left -> right
  m.edges.clear();
  m.edges.reserve(3 * nc / 2 + nc);
  std::unordered_map<std::uint64_t, int> by_key;
  by_key.reserve(2 * nc);
  for (int c = 0; c < nc; ++c) {
    auto& cell = m.cells[c];
    for (int k = 0; k < 3; ++k) {
      const int va = cell.vertices[k];
      const int vb = cell.vertices[(k + 1) % 3];
      auto [it, inserted] = by_key.try_emplace(edge_key(va, vb), m.n_edges());
      if (inserted) {
        Edge e;
        e.v0 = va;
        e.v1 = vb;
        e.left_cell = c;
        const Vec2 pa = m.vertices[va].pos;
        const Vec2 pb = m.vertices[vb].pos;
        e.length = std::hypot(pb.x - pa.x, pb.y - pa.y);
        if (!(e.length > 0.0))
          throw MeshError("degenerate cell " + std::to_string(c) + ": zero-length edge");
        e.midpoint = {0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
        e.b_mid = 0.5 * (m.vertices[va].b + m.vertices[vb].b);
        // traversing a CCW polygon, the right-hand perpendicular points outward
        e.normal = {(pb.y - pa.y) / e.length, -(pb.x - pa.x) / e.length};
        m.edges.push_back(e);
      } else {
        Edge& e = m.edges[it->second];
        if (e.right_cell != kBoundary)
          throw MeshError("non-conforming mesh: edge (" + std::to_string(va) + "," +
                          std::to_string(vb) + ") shared by more than two cells");
        if (e.v0 != vb || e.v1 != va)
          throw MeshError("inconsistent orientation at edge (" + std::to_string(va) + "," +
                          std::to_string(vb) + ")");
        e.right_cell = c;
      }
      cell.edges[k] = it->second;
    }
  }

  m.edge_tag.assign(m.edges.size(), BoundaryTag::kWall);
  m.boundary_edges.clear();
  for (int e = 0; e < m.n_edges(); ++e)
    if (m.edges[e].right_cell == kBoundary) m.boundary_edges.push_back(e);

  // per-cell caches
  m.slot_edge.resize(3 * nc);
  m.slot_sign.resize(3 * nc);
  m.slot_length.resize(3 * nc);
  m.slot_b_mid.resize(3 * nc);
  m.slot_inward.resize(3 * nc);
  m.slot_offset.resize(3 * nc);
  for (int c = 0; c < nc; ++c) {
    auto& cell = m.cells[c];
    double perimeter = 0.0;
    double b_sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int e = cell.edges[k];
      const Edge& edge = m.edges[e];
      const double sign = (edge.right_cell == c) ? 1.0 : -1.0;
      const int s = 3 * c + k;
      m.slot_edge[s] = e;
      m.slot_sign[s] = sign;
      m.slot_length[s] = edge.length;
      m.slot_b_mid[s] = edge.b_mid;
      m.slot_inward[s] = {sign * edge.normal.x, sign * edge.normal.y};
      m.slot_offset[s] = edge.midpoint - cell.centroid;
      cell.neighbors[k] = (edge.right_cell == c) ? edge.left_cell : edge.right_cell;
      perimeter += edge.length;
      b_sum += edge.b_mid;
    }
    cell.b_center = b_sum / 3.0;
    cell.inradius = 2.0 * cell.area / perimeter;

    // constant per-cell gradient of the plane through the vertex bottoms
    const Vec2 p0 = m.vertices[cell.vertices[0]].pos;
    const Vec2 p1 = m.vertices[cell.vertices[1]].pos;
    const Vec2 p2 = m.vertices[cell.vertices[2]].pos;
    const double b0 = m.vertices[cell.vertices[0]].b;
    const double b1 = m.vertices[cell.vertices[1]].b;
    const double b2 = m.vertices[cell.vertices[2]].b;
    const double det = 2.0 * cell.area;
    cell.b_grad = {((b1 - b0) * (p2.y - p0.y) - (b2 - b0) * (p1.y - p0.y)) / det,
                   ((b2 - b0) * (p1.x - p0.x) - (b1 - b0) * (p2.x - p0.x)) / det};
  }

  // flat mirrors for the kernels
  m.cell_neighbor.resize(3 * nc);
  m.cell_area.resize(nc);
  m.cell_inv_area.resize(nc);
  m.cell_b_center.resize(nc);
  m.cell_inradius.resize(nc);
  m.cell_cx.resize(nc);
  m.cell_cy.resize(nc);
  m.cell_bgx.resize(nc);
  m.cell_bgy.resize(nc);
  for (int c = 0; c < nc; ++c) {
    const Cell& cell = m.cells[c];
    for (int k = 0; k < 3; ++k) m.cell_neighbor[3 * c + k] = cell.neighbors[k];
    m.cell_area[c] = cell.area;
    m.cell_inv_area[c] = 1.0 / cell.area;
    m.cell_b_center[c] = cell.b_center;
    m.cell_inradius[c] = cell.inradius;
    m.cell_cx[c] = cell.centroid.x;
    m.cell_cy[c] = cell.centroid.y;
    m.cell_bgx[c] = cell.b_grad.x;
    m.cell_bgy[c] = cell.b_grad.y;
  }
  const int ne = m.n_edges();
  m.edge_left.resize(ne);
  m.edge_right.resize(ne);
  m.edge_len.resize(ne);
  m.edge_nx.resize(ne);
  m.edge_ny.resize(ne);
  m.edge_mx.resize(ne);
  m.edge_my.resize(ne);
  m.edge_b.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = m.edges[e];
    m.edge_left[e] = edge.left_cell;
    m.edge_right[e] = edge.right_cell;
    m.edge_len[e] = edge.length;
    m.edge_nx[e] = edge.normal.x;
    m.edge_ny[e] = edge.normal.y;
    m.edge_mx[e] = edge.midpoint.x;
    m.edge_my[e] = edge.midpoint.y;
    m.edge_b[e] = edge.b_mid;
  }
}

}  // namespace

double Mesh::total_area() const {
  double a = 0.0;
  for (const auto& c : cells) a += c.area;
  return a;
}

Mesh generate_rect_mesh(double lx, double ly, int nx, int ny, const BottomFn& bottom) {
  if (!(lx > 0.0) || !(ly > 0.0))
    throw ConfigError("generate_rect_mesh: domain dimensions must be positive");
  if (nx < 1 || ny < 1) throw ConfigError("generate_rect_mesh: nx and ny must be >= 1");

  Mesh m;
  m.vertices.resize(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const double x = lx * i / nx;
      const double y = ly * j / ny;
      const double b = bottom(x, y);
      if (!std::isfinite(b))
        throw ConfigError("generate_rect_mesh: bottom not finite at (" + std::to_string(x) +
                          ", " + std::to_string(y) + ")");
      m.vertices[static_cast<std::size_t>(j) * (nx + 1) + i] = {{x, y}, b};
    }
  }

  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  m.cells.resize(static_cast<std::size_t>(2) * nx * ny);
  std::size_t c = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      m.cells[c++].vertices = {v00, v10, v11};
      m.cells[c++].vertices = {v00, v11, v01};
    }
  }
  finalize_mesh(m);
  return m;
}

namespace {

struct LineReader {
  std::istringstream in;
  int line_no = 0;
  std::string what;
  explicit LineReader(const std::string& text, std::string name) : in(text), what(std::move(name)) {}
  bool next(std::istringstream& fields) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      const auto pos = line.find('#');
      if (pos != std::string::npos) line.erase(pos);
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      fields.clear();
      fields.str(line);
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw MeshError(what + " line " + std::to_string(line_no) + ": " + msg);
  }
};

}  // namespace

Mesh load_mesh(const std::string& node_text, const std::string& ele_text,
               std::span<const double> b_override) {
  Mesh m;

  LineReader nodes(node_text, "node table");
  std::istringstream f;
  if (!nodes.next(f)) nodes.fail("empty input");
  long n = 0, dim = 0;
  if (!(f >> n >> dim) || n <= 0 || dim != 2) nodes.fail("expected header \"N 2\"");
  m.vertices.resize(static_cast<std::size_t>(n));
  std::vector<bool> seen(m.vertices.size(), false);
  for (long i = 0; i < n; ++i) {
    if (!nodes.next(f)) nodes.fail("expected " + std::to_string(n) + " vertex rows");
    long id;
    double x, y, b;
    if (!(f >> id >> x >> y >> b)) nodes.fail("expected \"id x y b\"");
    if (id < 0 || id >= n) nodes.fail("vertex id " + std::to_string(id) + " out of range");
    if (seen[static_cast<std::size_t>(id)]) nodes.fail("duplicate vertex id " + std::to_string(id));
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(b))
      nodes.fail("non-finite vertex data");
    seen[static_cast<std::size_t>(id)] = true;
    m.vertices[static_cast<std::size_t>(id)] = {{x, y}, b};
  }
  if (!b_override.empty()) {
    if (b_override.size() != m.vertices.size())
      throw MeshError("bottom override has " + std::to_string(b_override.size()) +
                      " values for " + std::to_string(m.vertices.size()) + " vertices");
    for (std::size_t i = 0; i < m.vertices.size(); ++i) m.vertices[i].b = b_override[i];
  }

  LineReader eles(ele_text, "element table");
  if (!eles.next(f)) eles.fail("empty input");
  long nt = 0, nv = 0;
  if (!(f >> nt >> nv) || nt <= 0 || nv != 3) eles.fail("expected header \"M 3\"");
  m.cells.resize(static_cast<std::size_t>(nt));
  std::vector<bool> seen_cell(m.cells.size(), false);
  for (long i = 0; i < nt; ++i) {
    if (!eles.next(f)) eles.fail("expected " + std::to_string(nt) + " triangle rows");
    long id, v0, v1, v2;
    if (!(f >> id >> v0 >> v1 >> v2)) eles.fail("expected \"id v0 v1 v2\"");
    if (id < 0 || id >= nt) eles.fail("triangle id " + std::to_string(id) + " out of range");
    if (seen_cell[static_cast<std::size_t>(id)])
      eles.fail("duplicate triangle id " + std::to_string(id));
    for (long v : {v0, v1, v2})
      if (v < 0 || v >= n) eles.fail("dangling vertex index " + std::to_string(v));
    seen_cell[static_cast<std::size_t>(id)] = true;
    m.cells[static_cast<std::size_t>(id)].vertices = {static_cast<int>(v0), static_cast<int>(v1),
                                                      static_cast<int>(v2)};
  }

  finalize_mesh(m);
  return m;
}

std::string write_node_text(const Mesh& mesh) {
  std::string out = std::to_string(mesh.n_vertices()) + " 2\n";
  char buf[128];
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const auto& v = mesh.vertices[i];
    std::snprintf(buf, sizeof buf, "%d %.17g %.17g %.17g\n", i, v.pos.x, v.pos.y, v.b);
    out += buf;
  }
  return out;
}

std::string write_ele_text(const Mesh& mesh) {
  std::string out = std::to_string(mesh.n_cells()) + " 3\n";
  char buf[96];
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& v = mesh.cells[c].vertices;
    std::snprintf(buf, sizeof buf, "%d %d %d %d\n", c, v[0], v[1], v[2]);
    out += buf;
  }
  return out;
}

namespace {

BoundaryTag parse_tag(const std::string& s, const std::function<void(const std::string&)>& fail) {
  if (s == "WALL") return BoundaryTag::kWall;
  if (s == "OUTFLOW") return BoundaryTag::kOutflow;
  fail("unknown boundary tag \"" + s + "\"");
  return BoundaryTag::kWall;  // unreachable
}

}  // namespace

void apply_boundary_tags(Mesh& mesh, const std::string& tag_text) {
  std::unordered_map<std::uint64_t, int> by_key;
  for (int e : mesh.boundary_edges) by_key.emplace(edge_key(mesh.edges[e].v0, mesh.edges[e].v1), e);

  LineReader lines(tag_text, "boundary tag table");
  std::istringstream f;
  while (lines.next(f)) {
    long va, vb;
    std::string tag;
    if (!(f >> va >> vb >> tag)) lines.fail("expected \"vertex_a vertex_b TAG\"");
    auto it = by_key.find(edge_key(static_cast<int>(va), static_cast<int>(vb)));
    if (it == by_key.end())
      lines.fail("(" + std::to_string(va) + "," + std::to_string(vb) + ") is not a boundary edge");
    mesh.edge_tag[it->second] = parse_tag(tag, [&](const std::string& m) { lines.fail(m); });
  }
}

std::string write_boundary_tags(const Mesh& mesh) {
  std::string out;
  for (int e : mesh.boundary_edges) {
    const Edge& edge = mesh.edges[e];
    out += std::to_string(edge.v0) + " " + std::to_string(edge.v1) +
           (mesh.edge_tag[e] == BoundaryTag::kOutflow ? " OUTFLOW\n" : " WALL\n");
  }
  return out;
}

void tag_rect_side(Mesh& mesh, Side side, BoundaryTag tag, double lx, double ly) {
  const double tol = 1e-12 * std::max(lx, ly);
  for (int e : mesh.boundary_edges) {
    const Vec2 mp = mesh.edges[e].midpoint;
    const bool on_side = (side == Side::kLeft && std::abs(mp.x) <= tol) ||
                         (side == Side::kRight && std::abs(mp.x - lx) <= tol) ||
                         (side == Side::kBottom && std::abs(mp.y) <= tol) ||
                         (side == Side::kTop && std::abs(mp.y - ly) <= tol);
    if (on_side) mesh.edge_tag[e] = tag;
  }
}

}  // namespace hydrofv
