#pragma once

#include <vector>

#include "hydrofv/errors.hpp"

namespace hydrofv {

/// Green-Ampt parameters of one soil layer, SI units.
struct SoilLayer {
  double ks = 0.0;      // saturated hydraulic conductivity [m/s]
  double psi = 0.0;     // suction head at the wetting front [m]
  double dtheta = 0.0;  // saturated minus initial moisture content [-]
};

/// One- or two-layer soil column. For two layers the upper layer has
/// thickness d1; the lower layer extends downward without bound.
class SoilModel {
 public:
  static SoilModel one_layer(const SoilLayer& layer);
  static SoilModel two_layer(const SoilLayer& upper, const SoilLayer& lower, double d1);

  bool is_two_layer() const { return two_layer_; }
  const SoilLayer& layer1() const { return layer1_; }
  const SoilLayer& layer2() const { return layer2_; }
  double d1() const { return d1_; }

  /// Wetting-front depth for a given cumulative infiltration [m].
  double front_depth(double ic) const;

  /// Infiltration capacity [m/s] at ponded depth h_p, +infinity at first contact.
  double capacity(double h_p, double ic) const;

  /// Cumulative infiltration after an implicit advance over dt with ponded
  /// depth h_p held fixed. Exact integral of the capacity ODE within a layer;
  /// a front crossing of d1 splits the step at the crossing time.
  double advance(double h_p, double ic, double dt) const;

 private:
  SoilLayer layer1_{};
  SoilLayer layer2_{};
  double d1_ = 0.0;
  bool two_layer_ = false;
};

/// One-layer capacity: I_r = Ks ((psi + h_p) dtheta / Ic + 1); +inf at Ic = 0.
double capacity_one_layer(const SoilLayer& layer, double h_p, double ic);

/// One-layer implicit cumulative advance over dt (ponded depth h_p frozen).
double advance_one_layer(const SoilLayer& layer, double h_p, double ic, double dt);

/// Two-layer effective conductivity at front depth d_f (harmonic
/// thickness-weighted mean once the front passes d1).
double effective_conductivity(const SoilModel& model, double d_f);

/// Two-layer capacity: I_r = Ke ((psi + h_p) / d_f + 1) with psi of the layer
/// containing the front; +inf at d_f = 0.
double capacity_two_layer(const SoilModel& model, double h_p, double ic);

/// Two-layer implicit cumulative advance over dt.
double advance_two_layer(const SoilModel& model, double h_p, double ic, double dt);

struct InfiltrationStep {
  double rate = 0.0;    // realized infiltration rate [m/s]
  double ic_new = 0.0;  // updated cumulative infiltration [m]
};

/// Rainfall/ponding partition for one cell over one time step.
/// With standing water (h > 0) or rainfall beyond capacity, the cumulative
/// infiltration advances implicitly and the realized rate is capped at h/dt;
/// otherwise all rain infiltrates. The surface water removed equals the
/// cumulative-infiltration increase exactly (both are rate*dt).
InfiltrationStep step_infiltration_cell(double rain_rate, double h, const SoilModel& model,
                                        double ic, double dt);

/// Per-cell cumulative infiltration [m]; nondecreasing in time.
struct InfiltrationState {
  std::vector<double> ic;

  explicit InfiltrationState(std::size_t n = 0) : ic(n, 0.0) {}
  std::size_t size() const { return ic.size(); }
};

}  // namespace hydrofv
