#include "hydrofv/reconstruction.hpp"

#include <algorithm>
#include <cmath>

namespace hydrofv {

void green_gauss_gradients(const Mesh& mesh, std::span<const double> field, std::span<double> gx,
                           std::span<double> gy) {
  const int nc = mesh.n_cells();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const double own = field[c];
    double sx = 0.0, sy = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int s = 3 * c + k;
      const int nb = mesh.cell_neighbor[s];
      const double iface = (nb == kBoundary) ? own : 0.5 * (own + field[nb]);
      const double lw = mesh.slot_length[s] * iface;
      // outward normal = negated stored inward normal
      sx -= lw * mesh.slot_inward[s].x;
      sy -= lw * mesh.slot_inward[s].y;
    }
    gx[c] = sx * mesh.cell_inv_area[c];
    gy[c] = sy * mesh.cell_inv_area[c];
  }
}

namespace {

// limiter scale from precomputed neighbor bounds and the three midpoint offsets
inline double bj_scale(const Mesh& mesh, int c, double own, double lo, double hi, double gx,
                       double gy) {
  double phi = 1.0;
  for (int k = 0; k < 3; ++k) {
    const Vec2 r = mesh.slot_offset[3 * c + k];
    const double delta = gx * r.x + gy * r.y;
    if (delta > 0.0)
      phi = std::min(phi, (hi - own) / delta);
    else if (delta < 0.0)
      phi = std::min(phi, (lo - own) / delta);
  }
  return phi;
}

}  // namespace

void barth_jespersen_limit(const Mesh& mesh, std::span<const double> field, std::span<double> gx,
                           std::span<double> gy) {
  const int nc = mesh.n_cells();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const double own = field[c];
    double lo = own, hi = own;
    for (int k = 0; k < 3; ++k) {
      const int nb = mesh.cell_neighbor[3 * c + k];
      if (nb == kBoundary) continue;
      lo = std::min(lo, field[nb]);
      hi = std::max(hi, field[nb]);
    }
    const double phi = bj_scale(mesh, c, own, lo, hi, gx[c], gy[c]);
    gx[c] *= phi;
    gy[c] *= phi;
  }
}

double positivity_alpha(double h_bar, const double* deltas) {
  double alpha = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (deltas[k] < 0.0) {
      const double bound = h_bar / (-deltas[k]);
      alpha = std::min(alpha, bound);
    }
  }
  return std::clamp(alpha, 0.0, 1.0);
}

void limit_and_correct(const Mesh& mesh, std::span<const double> w, std::span<const double> p,
                       std::span<const double> q, GradientField& g) {
  const int nc = mesh.n_cells();
  g.resize(static_cast<std::size_t>(nc));

#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const double inv_area = mesh.cell_inv_area[c];
    const double wbar = w[c], pbar = p[c], qbar = q[c];
    const double b_center = mesh.cell_b_center[c];
    const double b0 = mesh.slot_b_mid[3 * c];
    const double b1 = mesh.slot_b_mid[3 * c + 1];
    const double b2 = mesh.slot_b_mid[3 * c + 2];
    const double b_max = std::max(b0, std::max(b1, b2));
    const double h_bar = wbar - b_center;

    if (wbar < b_max || !(h_bar > 0.0)) {
      // dry or partially submerged: constant-depth extension, first order
      g.depth_extended[c] = 1;
      g.alpha[c] = 0.0;
      g.wx[c] = 0.0;
      g.wy[c] = 0.0;
      g.px[c] = 0.0;
      g.py[c] = 0.0;
      g.qx[c] = 0.0;
      g.qy[c] = 0.0;
      continue;
    }
    g.depth_extended[c] = 0;

    // one gather of the neighbor means feeds both Green-Gauss and BJ
    double nw[3], np[3], nq[3];
    for (int k = 0; k < 3; ++k) {
      const int nb = mesh.cell_neighbor[3 * c + k];
      if (nb == kBoundary) {
        nw[k] = wbar;
        np[k] = pbar;
        nq[k] = qbar;
      } else {
        nw[k] = w[nb];
        np[k] = p[nb];
        nq[k] = q[nb];
      }
    }

    // locally uniform patch: BJ would zero every gradient (stencil max equals
    // the mean), so the result is written directly, bit-identical
    if (nw[0] == wbar && nw[1] == wbar && nw[2] == wbar && np[0] == pbar && np[1] == pbar &&
        np[2] == pbar && nq[0] == qbar && nq[1] == qbar && nq[2] == qbar) {
      double deltas[3] = {b_center - b0, b_center - b1, b_center - b2};
      g.alpha[c] = positivity_alpha(h_bar, deltas);
      g.wx[c] = 0.0;
      g.wy[c] = 0.0;
      g.px[c] = 0.0;
      g.py[c] = 0.0;
      g.qx[c] = 0.0;
      g.qy[c] = 0.0;
      continue;
    }

    double wx = 0.0, wy = 0.0, px = 0.0, py = 0.0, qx = 0.0, qy = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int s = 3 * c + k;
      const double l = mesh.slot_length[s];
      const double nox = -mesh.slot_inward[s].x;
      const double noy = -mesh.slot_inward[s].y;
      const double wi = 0.5 * (wbar + nw[k]);
      const double pi = 0.5 * (pbar + np[k]);
      const double qi = 0.5 * (qbar + nq[k]);
      wx += l * wi * nox;
      wy += l * wi * noy;
      px += l * pi * nox;
      py += l * pi * noy;
      qx += l * qi * nox;
      qy += l * qi * noy;
    }
    wx *= inv_area;
    wy *= inv_area;
    px *= inv_area;
    py *= inv_area;
    qx *= inv_area;
    qy *= inv_area;

    const double w_lo = std::min(wbar, std::min(nw[0], std::min(nw[1], nw[2])));
    const double w_hi = std::max(wbar, std::max(nw[0], std::max(nw[1], nw[2])));
    const double p_lo = std::min(pbar, std::min(np[0], std::min(np[1], np[2])));
    const double p_hi = std::max(pbar, std::max(np[0], std::max(np[1], np[2])));
    const double q_lo = std::min(qbar, std::min(nq[0], std::min(nq[1], nq[2])));
    const double q_hi = std::max(qbar, std::max(nq[0], std::max(nq[1], nq[2])));

    const double phi_w = bj_scale(mesh, c, wbar, w_lo, w_hi, wx, wy);
    const double phi_p = bj_scale(mesh, c, pbar, p_lo, p_hi, px, py);
    const double phi_q = bj_scale(mesh, c, qbar, q_lo, q_hi, qx, qy);
    wx *= phi_w;
    wy *= phi_w;
    px *= phi_p;
    py *= phi_p;
    qx *= phi_q;
    qy *= phi_q;

    // midpoint depth drawdowns at alpha = 1
    double deltas[3];
    const double bmids[3] = {b0, b1, b2};
    for (int k = 0; k < 3; ++k) {
      const Vec2 r = mesh.slot_offset[3 * c + k];
      deltas[k] = wx * r.x + wy * r.y + (b_center - bmids[k]);
    }
    g.alpha[c] = positivity_alpha(h_bar, deltas);
    g.wx[c] = wx;
    g.wy[c] = wy;
    g.px[c] = px;
    g.py[c] = py;
    g.qx[c] = qx;
    g.qy[c] = qy;
  }
}

void edge_states(const Mesh& mesh, std::span<const double> w, std::span<const double> p,
                 std::span<const double> q, const GradientField& grad, EdgeStates& out) {
  const int ne = mesh.n_edges();
  out.left.resize(static_cast<std::size_t>(ne));
  out.right.resize(static_cast<std::size_t>(ne));

#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    out.left[e] = reconstruct_at(mesh, w, p, q, grad, mesh.edge_left[e], e);
    const int rc = mesh.edge_right[e];
    if (rc != kBoundary) out.right[e] = reconstruct_at(mesh, w, p, q, grad, rc, e);
  }
}

}  // namespace hydrofv
