#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hydrofv {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

enum class BoundaryTag : std::uint8_t { kWall = 0, kOutflow = 1 };

/// Sentinel neighbor / right-cell index for boundary edges.
inline constexpr int kBoundary = -1;

struct Vertex {
  Vec2 pos;
  double b = 0.0;  // bottom elevation at the vertex
};

/// Undirected mesh edge. `normal` is the unit normal pointing from left_cell
/// toward right_cell; for boundary edges (right_cell == kBoundary) it points
/// out of the domain.
struct Edge {
  int v0 = -1;
  int v1 = -1;
  int left_cell = -1;
  int right_cell = kBoundary;
  double length = 0.0;
  Vec2 midpoint;
  Vec2 normal;
  double b_mid = 0.0;  // bottom at the edge midpoint, (b(v0)+b(v1))/2
};

/// Triangle cell with precomputed geometry. Local slot k = 0,1,2 walks the
/// edges (v0,v1), (v1,v2), (v2,v0) of the counter-clockwise vertex list.
struct Cell {
  std::array<int, 3> vertices{-1, -1, -1};
  std::array<int, 3> edges{-1, -1, -1};
  std::array<int, 3> neighbors{kBoundary, kBoundary, kBoundary};
  double area = 0.0;
  Vec2 centroid;
  double b_center = 0.0;  // mean of the three edge-midpoint bottoms
  Vec2 b_grad;            // gradient of the plane through the vertex bottoms
  double inradius = 0.0;  // 2*area/perimeter
};

class Mesh {
 public:
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Cell> cells;
  std::vector<BoundaryTag> edge_tag;   // per edge; meaningful on boundary edges
  std::vector<int> boundary_edges;     // indices of boundary edges

  // Flat per-(cell,slot) caches for the hot loops. Entry 3*c + k.
  std::vector<int> slot_edge;          // edge index
  std::vector<double> slot_sign;       // +1 if cell is the edge's right cell, -1 if left
  std::vector<double> slot_length;     // edge length
  std::vector<double> slot_b_mid;      // edge-midpoint bottom
  std::vector<Vec2> slot_inward;       // inward unit normal for this cell on this edge
  std::vector<Vec2> slot_offset;       // edge midpoint - cell centroid

  // Flat per-cell / per-edge mirrors of the struct fields used in the kernels.
  std::vector<int> cell_neighbor;      // 3*c + k
  std::vector<double> cell_area, cell_inv_area, cell_b_center, cell_inradius;
  std::vector<double> cell_cx, cell_cy, cell_bgx, cell_bgy;
  std::vector<int> edge_left, edge_right;
  std::vector<double> edge_len, edge_nx, edge_ny, edge_mx, edge_my, edge_b;

  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_vertices() const { return static_cast<int>(vertices.size()); }

  /// Inward unit normal of `cell` on its local edge slot k.
  Vec2 inward_normal(int cell, int k) const { return slot_inward[3 * cell + k]; }

  /// Bottom elevation at the three edge midpoints of a cell, slot order.
  std::array<double, 3> bottom_at_midpoints(int cell) const {
    return {slot_b_mid[3 * cell], slot_b_mid[3 * cell + 1], slot_b_mid[3 * cell + 2]};
  }

  double total_area() const;
};

using BottomFn = std::function<double(double, double)>;

/// Structured triangulation of [0,Lx]x[0,Ly]: nx*ny rectangles, each split into
/// two triangles along the same diagonal. Vertex bottoms sampled from `bottom`.
Mesh generate_rect_mesh(double lx, double ly, int nx, int ny, const BottomFn& bottom);

/// Build a mesh from whitespace-separated node/element tables.
/// Node file: first line "N 2", then "id x y b" per line.
/// Element file: first line "M 3", then "id v0 v1 v2" per line (0-based).
/// If `b_override` is non-empty it replaces the node-file bottom values.
Mesh load_mesh(const std::string& node_text, const std::string& ele_text,
               std::span<const double> b_override = {});

/// Serialize to the node/element text formats accepted by load_mesh.
/// Full %.17g precision so a save/load round trip is bitwise exact.
std::string write_node_text(const Mesh& mesh);
std::string write_ele_text(const Mesh& mesh);

/// Boundary tag table: one "vertex_a vertex_b TAG" line per tagged edge.
void apply_boundary_tags(Mesh& mesh, const std::string& tag_text);
std::string write_boundary_tags(const Mesh& mesh);

enum class Side : std::uint8_t { kLeft, kRight, kBottom, kTop };

/// Tag every boundary edge lying on one side of a generated [0,Lx]x[0,Ly] mesh.
void tag_rect_side(Mesh& mesh, Side side, BoundaryTag tag, double lx, double ly);

}  // namespace hydrofv
