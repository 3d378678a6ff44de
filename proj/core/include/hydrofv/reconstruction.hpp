#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hydrofv/flow_field.hpp"
#include "hydrofv/mesh.hpp"

namespace hydrofv {

/// Per-cell limited gradients of (w, p, q), the positivity parameter alpha
/// applied to the w-gradient, and a flag marking cells reconstructed by the
/// first-order depth extension (see limit_and_correct).
struct GradientField {
  std::vector<double> wx, wy, px, py, qx, qy;
  std::vector<double> alpha;
  std::vector<std::uint8_t> depth_extended;

  void resize(std::size_t n) {
    wx.resize(n);
    wy.resize(n);
    px.resize(n);
    py.resize(n);
    qx.resize(n);
    qy.resize(n);
    alpha.resize(n);
    depth_extended.resize(n);
  }
};

/// Left/right reconstructed states at every edge midpoint. `left` comes from
/// the edge's left cell; `right` from the right cell on interior edges and is
/// left untouched on boundary edges (the solver fills the ghost there).
struct EdgeStates {
  std::vector<ConservedState> left;
  std::vector<ConservedState> right;

  void resize(std::size_t n) {
    left.resize(n);
    right.resize(n);
  }
};

/// Unlimited Green-Gauss gradient of one per-cell scalar field. The interface
/// value is the arithmetic mean of the two adjacent cell averages (the cell's
/// own average on boundary edges).
void green_gauss_gradients(const Mesh& mesh, std::span<const double> field,
                           std::span<double> gx, std::span<double> gy);

/// Barth-Jespersen scalar limiter: scales (gx,gy) per cell so the values
/// reconstructed at the edge midpoints stay within the min/max of the cell
/// and its edge neighbors. Idempotent.
void barth_jespersen_limit(const Mesh& mesh, std::span<const double> field,
                           std::span<double> gx, std::span<double> gy);

/// Largest alpha in [0,1] with h_bar + alpha*delta_k >= 0 for all three
/// midpoint drawdowns delta_k (reconstructed depth minus mean depth at alpha=1).
double positivity_alpha(double h_bar, const double* deltas);

/// Full second-order reconstruction pipeline: fused Green-Gauss gradients for
/// (w, p, q), BJ limiting, and the depth-positivity correction. Cells whose
/// mean surface sits below the highest edge-midpoint bottom (no alpha in [0,1]
/// can keep all midpoint depths nonnegative) are flagged depth_extended: their
/// gradients are zeroed and edge_states reconstructs them as a constant-depth
/// film w = B_jk + h_bar instead of a w-plane.
void limit_and_correct(const Mesh& mesh, std::span<const double> w, std::span<const double> p,
                       std::span<const double> q, GradientField& out);

inline GradientField limit_and_correct(const Mesh& mesh, std::span<const double> w,
                                       std::span<const double> p, std::span<const double> q) {
  GradientField g;
  limit_and_correct(mesh, w, p, q, g);
  return g;
}

/// Corrected reconstruction of one cell at the midpoint of edge e. Depths are
/// clamped at zero (rounding slack only, for cells that are not
/// depth-extended).
inline ConservedState reconstruct_at(const Mesh& mesh, std::span<const double> w,
                                     std::span<const double> p, std::span<const double> q,
                                     const GradientField& grad, int c, int e) {
  ConservedState u;
  const double b_edge = mesh.edge_b[e];
  if (grad.depth_extended[c]) {
    const double h_bar = w[c] - mesh.cell_b_center[c];
    u.w = b_edge + (h_bar > 0.0 ? h_bar : 0.0);
    u.p = p[c];
    u.q = q[c];
    return u;
  }
  const double rx = mesh.edge_mx[e] - mesh.cell_cx[c];
  const double ry = mesh.edge_my[e] - mesh.cell_cy[c];
  const double a = grad.alpha[c];
  u.w = w[c] + a * (grad.wx[c] * rx + grad.wy[c] * ry);
  u.p = p[c] + grad.px[c] * rx + grad.py[c] * ry;
  u.q = q[c] + grad.qx[c] * rx + grad.qy[c] * ry;
  if (u.w < b_edge) u.w = b_edge;  // rounding slack
  return u;
}

/// Evaluates the corrected linear reconstruction at every edge midpoint.
void edge_states(const Mesh& mesh, std::span<const double> w, std::span<const double> p,
                 std::span<const double> q, const GradientField& grad, EdgeStates& out);

}  // namespace hydrofv
