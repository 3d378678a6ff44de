#include "hydrofv/sources.hpp"

namespace hydrofv {

void bed_slope_source(const Mesh& mesh, const EdgeStates& states, const GradientField& grad,
                      std::span<const double> w_bar, std::span<double> s2, std::span<double> s3) {
  const int nc = mesh.n_cells();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const Cell& cell = mesh.cells[c];
    double sum_x = 0.0, sum_y = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int s = 3 * c + k;
      const int e = mesh.slot_edge[s];
      // own side: right-cell states carry slot_sign +1
      const ConservedState& own =
          (mesh.slot_sign[s] > 0.0) ? states.right[e] : states.left[e];
      const double h_edge = own.w - mesh.slot_b_mid[s];
      const double pressure = half_gh2(h_edge);
      const double nox = -mesh.slot_inward[s].x;
      const double noy = -mesh.slot_inward[s].y;
      const double l = mesh.slot_length[s];
      sum_x += pressure * nox * l;
      sum_y += pressure * noy * l;
    }
    const double wx_eff = grad.depth_extended[c] ? cell.b_grad.x : grad.alpha[c] * grad.wx[c];
    const double wy_eff = grad.depth_extended[c] ? cell.b_grad.y : grad.alpha[c] * grad.wy[c];
    const double h_bar = w_bar[c] - cell.b_center;
    s2[c] = sum_x / cell.area - kGravity * wx_eff * h_bar;
    s3[c] = sum_y / cell.area - kGravity * wy_eff * h_bar;
  }
}

}  // namespace hydrofv
