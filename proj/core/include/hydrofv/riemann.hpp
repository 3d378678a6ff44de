#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "hydrofv/errors.hpp"
#include "hydrofv/flow_field.hpp"
#include "hydrofv/mesh.hpp"

namespace hydrofv {

/// Depth below which velocities are treated as zero (hydrostatic pressure kept).
inline constexpr double kDefaultDryDepth = 1e-6;

/// Edge-normal flux components per unit edge length.
struct EdgeFlux {
  double mass = 0.0;
  double xmom = 0.0;
  double ymom = 0.0;
};

/// Physical shallow-water flux projected on a unit normal.
inline EdgeFlux physical_flux_normal(const ConservedState& u, double b, Vec2 n,
                                     double h_eps = kDefaultDryDepth) {
  double h = u.w - b;
  if (h < -1e-12)
    throw NumericalError("physical_flux_normal: negative depth " + std::to_string(h));
  if (h < 0.0) h = 0.0;
  double ux = 0.0, uy = 0.0;
  if (h >= h_eps) {
    ux = u.p / h;
    uy = u.q / h;
  }
  const double half_gh2 = 0.5 * kGravity * h * h;
  return {u.p * n.x + u.q * n.y,
          (u.p * ux + half_gh2) * n.x + u.p * uy * n.y,
          u.q * ux * n.x + (u.q * uy + half_gh2) * n.y};
}

/// Davis-type extreme-eigenvalue wave speed estimates. A dry side contributes
/// only the wet side's eigenvalues; both sides dry gives (0, 0).
inline std::pair<double, double> wave_speeds(const ConservedState& ul, const ConservedState& ur,
                                             double b, Vec2 n, double h_eps = kDefaultDryDepth) {
  const double hl = std::max(ul.w - b, 0.0);
  const double hr = std::max(ur.w - b, 0.0);
  const bool wet_l = hl >= h_eps;
  const bool wet_r = hr >= h_eps;
  if (!wet_l && !wet_r) return {0.0, 0.0};

  double sl = 0.0, sr = 0.0;
  if (wet_l) {
    const double un = (ul.p * n.x + ul.q * n.y) / hl;
    const double c = std::sqrt(kGravity * hl);
    sl = un - c;
    sr = un + c;
  }
  if (wet_r) {
    const double un = (ur.p * n.x + ur.q * n.y) / hr;
    const double c = std::sqrt(kGravity * hr);
    if (wet_l) {
      sl = std::min(sl, un - c);
      sr = std::max(sr, un + c);
    } else {
      sl = un - c;
      sr = un + c;
    }
  }
  return {sl, sr};
}

/// HLL numerical flux across an edge with a single bottom value b on both
/// sides. n points from the L state side toward the R state side.
inline EdgeFlux hll_flux(const ConservedState& ul, const ConservedState& ur, double b, Vec2 n,
                         double h_eps = kDefaultDryDepth) {
  const double hl = std::max(ul.w - b, 0.0);
  const double hr = std::max(ur.w - b, 0.0);
  if (hl < h_eps && hr < h_eps) return {0.0, 0.0, 0.0};
  if (ul.w == ur.w && ul.p == ur.p && ul.q == ur.q) return physical_flux_normal(ul, b, n, h_eps);

  const auto [sl, sr] = wave_speeds(ul, ur, b, n, h_eps);
  if (sr < sl) throw NumericalError("hll_flux: wave speed ordering violated");
  if (sl >= 0.0) return physical_flux_normal(ul, b, n, h_eps);
  if (sr <= 0.0) return physical_flux_normal(ur, b, n, h_eps);

  const EdgeFlux fl = physical_flux_normal(ul, b, n, h_eps);
  const EdgeFlux fr = physical_flux_normal(ur, b, n, h_eps);
  const double inv = 1.0 / (sr - sl);
  return {(sr * fl.mass - sl * fr.mass + sl * sr * (ur.w - ul.w)) * inv,
          (sr * fl.xmom - sl * fr.xmom + sl * sr * (ur.p - ul.p)) * inv,
          (sr * fl.ymom - sl * fr.ymom + sl * sr * (ur.q - ul.q)) * inv};
}

}  // namespace hydrofv
