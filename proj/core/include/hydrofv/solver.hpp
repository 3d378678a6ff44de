#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hydrofv/flow_field.hpp"
#include "hydrofv/infiltration.hpp"
#include "hydrofv/mesh.hpp"
#include "hydrofv/reconstruction.hpp"
#include "hydrofv/riemann.hpp"
#include "hydrofv/sources.hpp"

namespace hydrofv {

struct SolverParams {
  double cfl = 0.25;
  double h_eps = 1e-6;    // wet/dry threshold [m]
  double u_max = 100.0;   // blow-up detector bound [m/s]
  double dt_max = 1.0;    // step cap; also the step for all-dry fields [s]
  double manning = 0.0;   // constant Manning coefficient
};

struct RainInterval {
  double t_start = 0.0;
  double t_end = 0.0;
  double rate = 0.0;  // [m/s]

  bool operator==(const RainInterval&) const = default;
};

/// Piecewise-constant rainfall schedule; intervals sorted and non-overlapping.
class RainSchedule {
 public:
  RainSchedule() = default;
  explicit RainSchedule(std::vector<RainInterval> intervals);

  double rate_at(double t) const;             // rate on [t_start, t_end)
  double next_boundary_after(double t) const; // +inf when none
  const std::vector<RainInterval>& intervals() const { return intervals_; }

 private:
  std::vector<RainInterval> intervals_;
};

/// Volume bookkeeping [m^3]. At every report time
///   surface + infiltrated + outflow == initial + rain_in + clamp_correction
/// up to floating-point summation noise.
struct MassLedger {
  double surface_volume = 0.0;
  double infiltrated_volume = 0.0;
  double rain_in = 0.0;
  double outflow_out = 0.0;
  double clamp_correction = 0.0;
  double initial_volume = 0.0;

  double residual() const {
    return surface_volume + infiltrated_volume + outflow_out - initial_volume - rain_in -
           clamp_correction;
  }
};

/// Ghost state across a boundary edge whose outward unit normal is n.
/// WALL mirrors the interior state with the normal velocity negated;
/// OUTFLOW copies it (zero gradient).
ConservedState boundary_ghost(BoundaryTag tag, const ConservedState& interior, Vec2 n);

/// CFL time step: cfl * min over wet cells of inradius / (|u| + sqrt(g h)).
/// An all-dry field returns params.dt_max.
double compute_dt(const Mesh& mesh, const FlowField& field, const SolverParams& params);

/// Discharge through all OUTFLOW boundary edges [m^3/s], positive outward,
/// evaluated from the interior reconstructed edge states.
double outlet_discharge(const Mesh& mesh, const FlowField& field,
                        const SolverParams& params = {});

/// Scratch buffers for one right-hand-side evaluation.
struct RhsWorkspace {
  GradientField grad;
  EdgeStates states;
  std::vector<EdgeFlux> flux;
};

/// Semi-discrete right side: flux divergence (one HLL solve per edge),
/// well-balanced bed-slope source, and the rain/infiltration mass source.
/// Friction is not included here; the stepper applies it point-implicitly.
void compute_rhs(const Mesh& mesh, const FlowField& field, double rain_rate,
                 std::span<const double> infil_rate, const SolverParams& params, RhsWorkspace& ws,
                 std::span<double> dw, std::span<double> dp, std::span<double> dq);

/// Owns the evolving state and advances it with SSP-RK2 (Heun) stages,
/// point-implicit friction after each stage, per-step frozen infiltration,
/// and a final positivity clamp.
class Simulation {
 public:
  Simulation(std::shared_ptr<const Mesh> mesh, FlowField initial, SolverParams params,
             RainSchedule rain = {}, std::optional<SoilModel> soil = std::nullopt);

  /// One step with an explicitly chosen dt.
  void advance(double dt);

  /// One adaptive step, capped so t_target and rain-interval boundaries are
  /// hit exactly. Returns the dt used (0 when already at the target).
  double step_to(double t_target);

  /// Adaptive steps until time t_target.
  void advance_to(double t_target);

  double time() const { return field_.t; }
  const Mesh& mesh() const { return *mesh_; }
  const FlowField& field() const { return field_; }
  const SolverParams& params() const { return params_; }
  bool has_soil() const { return soil_.has_value(); }
  std::span<const double> cumulative_infiltration() const { return ic_; }
  const RainSchedule& rain() const { return rain_; }

  MassLedger ledger() const;
  double outlet_discharge() const;

 private:
  double cfl_dt_checked();

  std::shared_ptr<const Mesh> mesh_;
  FlowField field_;
  SolverParams params_;
  RainSchedule rain_;
  std::optional<SoilModel> soil_;

  std::vector<double> ic_;          // cumulative infiltration per cell [m]
  std::vector<double> infil_rate_;  // per-step frozen realized rate [m/s]

  double total_area_ = 0.0;
  double initial_volume_ = 0.0;
  double rain_in_ = 0.0;
  double outflow_out_ = 0.0;
  double clamp_correction_ = 0.0;

  // stage scratch
  RhsWorkspace ws_;
  FlowField stage_;
  std::vector<double> k_w_, k_p_, k_q_;
  std::vector<double> clamp_scratch_;
};

}  // namespace hydrofv
