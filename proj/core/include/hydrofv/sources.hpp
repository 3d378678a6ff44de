#pragma once

#include <cmath>
#include <span>

#include "hydrofv/flow_field.hpp"
#include "hydrofv/mesh.hpp"
#include "hydrofv/reconstruction.hpp"
#include "hydrofv/riemann.hpp"

namespace hydrofv {

/// Shared hydrostatic pressure term; used identically by the physical flux and
/// the bed-slope source so the two cancel bitwise for still water.
inline double half_gh2(double h) { return 0.5 * kGravity * h * h; }

struct FrictionParams {
  double n_manning = 0.0;
};

/// Well-balanced bed-slope momentum source. Per cell:
///   S = g/(2|E|) sum_k l_k (w_own_k - B_k)^2 n_out_k  -  g grad_w_eff (w_bar - B_center)
/// where w_own_k is the cell's own reconstructed edge value and grad_w_eff is
/// the alpha-scaled limited surface gradient (the bed gradient on
/// depth-extended cells, whose reconstruction is w = B + h_bar).
void bed_slope_source(const Mesh& mesh, const EdgeStates& states, const GradientField& grad,
                      std::span<const double> w_bar, std::span<double> s2, std::span<double> s3);

/// Mass source from rainfall and infiltration rates [m/s].
inline double rain_infiltration_source(double rain_rate, double infiltration_rate) {
  return rain_rate - infiltration_rate;
}

/// Point-implicit Manning friction over one sub-step of length dt:
///   (p, q) <- (p, q) / (1 + dt g n^2 |u| / h^(4/3))
/// with |u| from the pre-update state. Below h_eps the momentum is zeroed.
/// Never changes the momentum direction and never increases its magnitude.
inline ConservedState friction_apply(const ConservedState& u, double h,
                                     const FrictionParams& params, double dt,
                                     double h_eps = kDefaultDryDepth) {
  ConservedState out = u;
  if (h < h_eps) {
    out.p = 0.0;
    out.q = 0.0;
    return out;
  }
  if (params.n_manning == 0.0) return out;
  const double speed = std::sqrt(u.p * u.p + u.q * u.q) / h;
  if (speed == 0.0) return out;
  const double h43 = h * std::cbrt(h);  // h^(4/3)
  const double divisor = 1.0 + dt * kGravity * params.n_manning * params.n_manning * speed / h43;
  out.p = u.p / divisor;
  out.q = u.q / divisor;
  return out;
}

}  // namespace hydrofv
