#include "hydrofv/infiltration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hydrofv {

namespace {

constexpr double kIcTol = 1e-12;  // absolute tolerance on cumulative infiltration [m]
constexpr int kMaxIter = 100;

// Solves x = ic0 + ks*dt + a_log * log((c_log + x)/(c_log + ic0)) for x > ic0.
// Safeguarded Newton on the residual f(x) = x - rhs(x), which is negative
// below the unique root and positive above it; a step leaving the bracket is
// replaced by bisection. (A plain fixed-point sweep stalls here: its
// contraction rate is c_log/(c_log + x), which approaches 1 for small
// cumulative infiltration.)
double solve_cumulative(double ic0, double ks, double dt, double a_log, double c_log) {
  if (dt <= 0.0) return ic0;
  if (a_log == 0.0) return ic0 + ks * dt;

  const double denom0 = c_log + ic0;
  const double base = ic0 + ks * dt;
  auto residual = [&](double x) { return x - base - a_log * std::log1p((x - ic0) / denom0); };

  // bracket [lo, hi] with f(lo) < 0 <= f(hi); f(ic0) = -ks*dt < 0. The upper
  // end is found lazily: Newton on this residual is monotone after the first
  // step (f is convex for a_log > 0, concave with f' > 1 otherwise), so the
  // bracket is only consulted if an iterate misbehaves.
  double lo = ic0;
  double hi = std::numeric_limits<double>::infinity();

  double x = base;
  for (int it = 0; it < kMaxIter; ++it) {
    const double f = residual(x);
    if (f < 0.0)
      lo = std::max(lo, x);
    else
      hi = std::min(hi, x);
    if (hi - lo < kIcTol) return std::max(0.5 * (lo + hi), ic0);

    const double fp = 1.0 - a_log / (c_log + x);
    double next = (fp > 0.0) ? x - f / fp : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      if (std::isinf(hi)) {
        hi = std::max(base + std::max(a_log, 0.0) * std::log1p(10.0 * ks * dt / denom0), base);
        for (int i = 0; i < 200 && residual(hi) < 0.0; ++i) hi = ic0 + 2.0 * (hi - ic0) + ks * dt;
      }
      next = 0.5 * (lo + hi);
    }
    // quadratic convergence: the final step bounds the distance to the root
    if (std::abs(next - x) < kIcTol) return std::max(next, ic0);
    x = next;
  }
  throw NumericalError("infiltration advance did not converge (ic0 = " + std::to_string(ic0) +
                       ", dt = " + std::to_string(dt) + ")");
}

// Time needed to grow the cumulative from ic0 to x under the same integral,
// i.e. the closed-form inverse of the implicit update.
double time_to_reach(double ic0, double ks, double a_log, double c_log, double x) {
  return (x - ic0 - a_log * std::log1p((x - ic0) / (c_log + ic0))) / ks;
}

}  // namespace

SoilModel SoilModel::one_layer(const SoilLayer& layer) {
  SoilModel m;
  m.layer1_ = layer;
  m.two_layer_ = false;
  return m;
}

SoilModel SoilModel::two_layer(const SoilLayer& upper, const SoilLayer& lower, double d1) {
  if (!(d1 > 0.0)) throw ConfigError("two-layer soil requires an upper-layer thickness d1 > 0");
  SoilModel m;
  m.layer1_ = upper;
  m.layer2_ = lower;
  m.d1_ = d1;
  m.two_layer_ = true;
  return m;
}

double SoilModel::front_depth(double ic) const {
  if (!two_layer_) return ic / layer1_.dtheta;
  const double ic_cross = d1_ * layer1_.dtheta;
  if (ic <= ic_cross) return ic / layer1_.dtheta;
  return d1_ + (ic - ic_cross) / layer2_.dtheta;
}

double SoilModel::capacity(double h_p, double ic) const {
  return two_layer_ ? capacity_two_layer(*this, h_p, ic) : capacity_one_layer(layer1_, h_p, ic);
}

double SoilModel::advance(double h_p, double ic, double dt) const {
  return two_layer_ ? advance_two_layer(*this, h_p, ic, dt) : advance_one_layer(layer1_, h_p, ic, dt);
}

double capacity_one_layer(const SoilLayer& layer, double h_p, double ic) {
  if (ic <= 0.0) return std::numeric_limits<double>::infinity();
  return layer.ks * ((layer.psi + h_p) * layer.dtheta / ic + 1.0);
}

double advance_one_layer(const SoilLayer& layer, double h_p, double ic, double dt) {
  const double c = layer.dtheta * (layer.psi + h_p);
  return solve_cumulative(ic, layer.ks, dt, c, c);
}

double effective_conductivity(const SoilModel& model, double d_f) {
  const double k1 = model.layer1().ks;
  if (d_f <= model.d1()) return k1;
  const double k2 = model.layer2().ks;
  return d_f / (model.d1() / k1 + (d_f - model.d1()) / k2);
}

double capacity_two_layer(const SoilModel& model, double h_p, double ic) {
  const double d_f = model.front_depth(ic);
  if (d_f <= 0.0) return std::numeric_limits<double>::infinity();
  const double ke = effective_conductivity(model, d_f);
  const double psi = (d_f <= model.d1()) ? model.layer1().psi : model.layer2().psi;
  return ke * ((psi + h_p) / d_f + 1.0);
}

double advance_two_layer(const SoilModel& model, double h_p, double ic, double dt) {
  const SoilLayer& up = model.layer1();
  const SoilLayer& low = model.layer2();
  const double ic_cross = model.d1() * up.dtheta;

  double remaining = dt;
  double ic_base = ic;
  if (ic < ic_cross) {
    const double c1 = up.dtheta * (up.psi + h_p);
    const double trial = solve_cumulative(ic, up.ks, dt, c1, c1);
    if (trial <= ic_cross) return trial;
    // split the step exactly where the front reaches d1
    const double t_cross = std::clamp(time_to_reach(ic, up.ks, c1, c1, ic_cross), 0.0, dt);
    remaining = dt - t_cross;
    ic_base = ic_cross;
  }
  if (remaining <= 0.0) return ic_base;

  // lower layer: the in-layer integral runs in the variable j = d_f * dtheta2
  const double df0 = model.front_depth(ic_base);
  const double j0 = df0 * low.dtheta;
  const double c2 = low.dtheta * (low.psi + h_p);
  const double a2 = low.dtheta * (low.psi + h_p - model.d1() * (low.ks / up.ks - 1.0));
  const double j1 = solve_cumulative(j0, low.ks, remaining, a2, c2);
  return ic_base + (j1 - j0);
}

InfiltrationStep step_infiltration_cell(double rain_rate, double h, const SoilModel& model,
                                        double ic, double dt) {
  const double i_r = model.capacity(h, ic);
  if (h > 0.0 || rain_rate > i_r) {
    // ponded regime: realize capacity through the implicit advance, capped by
    // the water actually standing on the surface
    const double ic_adv = model.advance(h, ic, dt);
    const double rate = std::min(h / dt, (ic_adv - ic) / dt);
    return {rate, ic + rate * dt};
  }
  return {rain_rate, ic + rain_rate * dt};
}

}  // namespace hydrofv
