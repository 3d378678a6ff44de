#include "hydrofv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hydrofv/errors.hpp"

namespace hydrofv {

RainSchedule::RainSchedule(std::vector<RainInterval> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const RainInterval& a, const RainInterval& b) { return a.t_start < b.t_start; });
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.rate < 0.0 || iv.t_start < 0.0 || iv.t_end < iv.t_start)
      throw ConfigError("invalid rain interval");
    if (i > 0 && iv.t_start < intervals_[i - 1].t_end)
      throw ConfigError("overlapping rain intervals");
  }
}

double RainSchedule::rate_at(double t) const {
  for (const auto& iv : intervals_)
    if (t >= iv.t_start && t < iv.t_end) return iv.rate;
  return 0.0;
}

double RainSchedule::next_boundary_after(double t) const {
  double next = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals_) {
    if (iv.t_start > t) next = std::min(next, iv.t_start);
    if (iv.t_end > t) next = std::min(next, iv.t_end);
  }
  return next;
}

ConservedState boundary_ghost(BoundaryTag tag, const ConservedState& interior, Vec2 n) {
  switch (tag) {
    case BoundaryTag::kWall: {
      const double un = interior.p * n.x + interior.q * n.y;
      return {interior.w, interior.p - 2.0 * un * n.x, interior.q - 2.0 * un * n.y};
    }
    case BoundaryTag::kOutflow:
      return interior;
  }
  throw ConfigError("unknown boundary tag");
}

namespace {

struct DtScan {
  double dt = std::numeric_limits<double>::infinity();
  double max_speed = 0.0;
};

DtScan scan_dt(const Mesh& mesh, const FlowField& field, const SolverParams& params) {
  const int nc = mesh.n_cells();
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_speed = 0.0;
#pragma omp parallel for schedule(static) reduction(min : min_ratio) reduction(max : max_speed)
  for (int c = 0; c < nc; ++c) {
    const double h = field.w[c] - mesh.cell_b_center[c];
    if (h < params.h_eps) continue;  // dry cells do not constrain the step
    const double speed = std::sqrt(field.p[c] * field.p[c] + field.q[c] * field.q[c]) / h;
    const double celerity = speed + std::sqrt(kGravity * h);
    min_ratio = std::min(min_ratio, mesh.cell_inradius[c] / celerity);
    max_speed = std::max(max_speed, speed);
  }
  DtScan out;
  out.max_speed = max_speed;
  out.dt = std::isfinite(min_ratio) ? params.cfl * min_ratio : params.dt_max;
  return out;
}

}  // namespace

double compute_dt(const Mesh& mesh, const FlowField& field, const SolverParams& params) {
  return std::min(scan_dt(mesh, field, params).dt, params.dt_max);
}

double outlet_discharge(const Mesh& mesh, const FlowField& field, const SolverParams& params) {
  bool any = false;
  for (int e : mesh.boundary_edges)
    if (mesh.edge_tag[e] == BoundaryTag::kOutflow) any = true;
  if (!any) throw ConfigError("outlet_discharge: mesh has no OUTFLOW boundary edges");

  GradientField grad = limit_and_correct(mesh, field.w, field.p, field.q);
  EdgeStates states;
  edge_states(mesh, field.w, field.p, field.q, grad, states);

  double q_out = 0.0;
  for (int e : mesh.boundary_edges) {
    if (mesh.edge_tag[e] != BoundaryTag::kOutflow) continue;
    const Edge& edge = mesh.edges[e];
    const ConservedState& u = states.left[e];
    q_out += (u.p * edge.normal.x + u.q * edge.normal.y) * edge.length;
  }
  return q_out;
}

void compute_rhs(const Mesh& mesh, const FlowField& field, double rain_rate,
                 std::span<const double> infil_rate, const SolverParams& params, RhsWorkspace& ws,
                 std::span<double> dw, std::span<double> dp, std::span<double> dq) {
  const int nc = mesh.n_cells();
  const int ne = mesh.n_edges();

  limit_and_correct(mesh, field.w, field.p, field.q, ws.grad);

  // reconstruct both sides (ghost on boundaries) and solve the Riemann
  // problem in one edge pass, oriented left -> right
  ws.states.resize(static_cast<std::size_t>(ne));
  ws.flux.resize(static_cast<std::size_t>(ne));
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    const ConservedState ul = reconstruct_at(mesh, field.w, field.p, field.q, ws.grad,
                                             mesh.edge_left[e], e);
    const int rc = mesh.edge_right[e];
    const Vec2 n{mesh.edge_nx[e], mesh.edge_ny[e]};
    const ConservedState ur = (rc != kBoundary)
                                  ? reconstruct_at(mesh, field.w, field.p, field.q, ws.grad, rc, e)
                                  : boundary_ghost(mesh.edge_tag[e], ul, n);
    ws.states.left[e] = ul;
    ws.states.right[e] = ur;
    ws.flux[e] = hll_flux(ul, ur, mesh.edge_b[e], n, params.h_eps);
  }

  // flux divergence and bed-slope source gathered together. Each slot adds
  // sign*l*(flux - own-side hydrostatic pressure on the edge normal): for
  // still water the two factors are bit-identical, so the difference (and
  // with it any spurious momentum) is exactly zero.
  int bad_cells = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad_cells)
  for (int c = 0; c < nc; ++c) {
    double fm = 0.0, fx = 0.0, fy = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int s = 3 * c + k;
      const int e = mesh.slot_edge[s];
      const EdgeFlux& f = ws.flux[e];
      const double sl = mesh.slot_sign[s] * mesh.slot_length[s];
      const ConservedState& own = (mesh.slot_sign[s] > 0.0) ? ws.states.right[e] : ws.states.left[e];
      const double pressure = half_gh2(own.w - mesh.slot_b_mid[s]);
      fm += sl * f.mass;
      fx += sl * (f.xmom - pressure * mesh.edge_nx[e]);
      fy += sl * (f.ymom - pressure * mesh.edge_ny[e]);
    }
    const double inv_area = mesh.cell_inv_area[c];
    const bool ext = ws.grad.depth_extended[c] != 0;
    const double wx_eff = ext ? mesh.cell_bgx[c] : ws.grad.alpha[c] * ws.grad.wx[c];
    const double wy_eff = ext ? mesh.cell_bgy[c] : ws.grad.alpha[c] * ws.grad.wy[c];
    const double h_bar = field.w[c] - mesh.cell_b_center[c];
    dw[c] = fm * inv_area + rain_infiltration_source(rain_rate, infil_rate[c]);
    dp[c] = fx * inv_area - kGravity * wx_eff * h_bar;
    dq[c] = fy * inv_area - kGravity * wy_eff * h_bar;
    if (!(std::isfinite(dw[c]) && std::isfinite(dp[c]) && std::isfinite(dq[c]))) ++bad_cells;
  }

  if (bad_cells > 0) {
    for (int c = 0; c < nc; ++c) {
      if (std::isfinite(dw[c]) && std::isfinite(dp[c]) && std::isfinite(dq[c])) continue;
      std::string msg = "non-finite tendency in cell " + std::to_string(c) + " at t = " +
                        std::to_string(field.t) + "; edge fluxes:";
      for (int k = 0; k < 3; ++k) {
        const int e = mesh.slot_edge[3 * c + k];
        msg += " e" + std::to_string(e) + "=(" + std::to_string(ws.flux[e].mass) + "," +
               std::to_string(ws.flux[e].xmom) + "," + std::to_string(ws.flux[e].ymom) + ")";
      }
      throw NumericalError(msg);
    }
  }
}

Simulation::Simulation(std::shared_ptr<const Mesh> mesh, FlowField initial, SolverParams params,
                       RainSchedule rain, std::optional<SoilModel> soil)
    : mesh_(std::move(mesh)),
      field_(std::move(initial)),
      params_(params),
      rain_(std::move(rain)),
      soil_(std::move(soil)) {
  const std::size_t nc = static_cast<std::size_t>(mesh_->n_cells());
  if (field_.size() != nc) throw ConfigError("initial field size does not match the mesh");
  ic_.assign(nc, 0.0);
  infil_rate_.assign(nc, 0.0);
  k_w_.resize(nc);
  k_p_.resize(nc);
  k_q_.resize(nc);
  clamp_scratch_.assign(nc, 0.0);
  stage_ = FlowField(nc);

  total_area_ = mesh_->total_area();
  for (std::size_t c = 0; c < nc; ++c) {
    const double h = field_.w[c] - mesh_->cells[c].b_center;
    if (h < -1e-12)
      throw ConfigError("initial surface below the bottom in cell " + std::to_string(c));
    initial_volume_ += std::max(h, 0.0) * mesh_->cells[c].area;
  }
}

double Simulation::cfl_dt_checked() {
  const DtScan scan = scan_dt(*mesh_, field_, params_);
  if (scan.max_speed > params_.u_max) {
    // locate the offender for the diagnostic (serial rescan, cold path)
    for (int c = 0; c < mesh_->n_cells(); ++c) {
      const double h = field_.w[c] - mesh_->cells[c].b_center;
      if (h < params_.h_eps) continue;
      if (std::hypot(field_.p[c], field_.q[c]) / h > params_.u_max)
        throw NumericalError("velocity blow-up at t = " + std::to_string(field_.t) + " in cell " +
                             std::to_string(c));
    }
  }
  return std::min(scan.dt, params_.dt_max);
}

void Simulation::advance(double dt) {
  if (!(dt > 0.0)) throw NumericalError("advance: dt must be positive");
  const int nc = mesh_->n_cells();
  const double rain_rate = rain_.rate_at(field_.t);

  // infiltration rates frozen over the step, rate*dt mirrored into ic_
  if (soil_.has_value()) {
    const SoilModel& soil = *soil_;
#pragma omp parallel for schedule(static)
    for (int c = 0; c < nc; ++c) {
      const double h = std::max(field_.w[c] - mesh_->cell_b_center[c], 0.0);
      const InfiltrationStep st = step_infiltration_cell(rain_rate, h, soil, ic_[c], dt);
      infil_rate_[c] = st.rate;
      ic_[c] = st.ic_new;
    }
  }

  const FrictionParams friction{params_.manning};
  auto outflow_rate = [&]() {
    double r = 0.0;
    for (int e : mesh_->boundary_edges)
      if (mesh_->edge_tag[e] == BoundaryTag::kOutflow) r += ws_.flux[e].mass * mesh_->edge_len[e];
    return r;
  };

  // stage 1: U* = U + dt rhs(U), then implicit friction over dt
  compute_rhs(*mesh_, field_, rain_rate, infil_rate_, params_, ws_, k_w_, k_p_, k_q_);
  const double outflow1 = outflow_rate();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < nc; ++c) {
    const double w = field_.w[c] + dt * k_w_[c];
    const double p = field_.p[c] + dt * k_p_[c];
    const double q = field_.q[c] + dt * k_q_[c];
    const ConservedState s =
        friction_apply({w, p, q}, w - mesh_->cell_b_center[c], friction, dt, params_.h_eps);
    stage_.w[c] = w;
    stage_.p[c] = s.p;
    stage_.q[c] = s.q;
  }
  stage_.t = field_.t + dt;

  // stage 2: U <- (U + U* + dt rhs(U*))/2, friction over dt/2 tops the
  // averaged stage-1 application up to one full implicit divisor per step;
  // then positivity clamp, dry-cell momentum reset, finiteness audit
  compute_rhs(*mesh_, stage_, rain_rate, infil_rate_, params_, ws_, k_w_, k_p_, k_q_);
  const double outflow2 = outflow_rate();
  int clamped = 0;
  int bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : clamped, bad)
  for (int c = 0; c < nc; ++c) {
    const double b = mesh_->cell_b_center[c];
    double w = 0.5 * (field_.w[c] + stage_.w[c] + dt * k_w_[c]);
    double p = 0.5 * (field_.p[c] + stage_.p[c] + dt * k_p_[c]);
    double q = 0.5 * (field_.q[c] + stage_.q[c] + dt * k_q_[c]);
    const ConservedState s = friction_apply({w, p, q}, w - b, friction, 0.5 * dt, params_.h_eps);
    p = s.p;
    q = s.q;
    if (w < b) {
      clamp_scratch_[c] = b - w;
      w = b;
      ++clamped;
    } else {
      clamp_scratch_[c] = 0.0;
    }
    if (w - b < params_.h_eps) {
      p = 0.0;
      q = 0.0;
    }
    if (!(std::isfinite(w) && std::isfinite(p) && std::isfinite(q))) ++bad;
    field_.w[c] = w;
    field_.p[c] = p;
    field_.q[c] = q;
  }
  if (bad > 0) {
    for (int c = 0; c < nc; ++c)
      if (!(std::isfinite(field_.w[c]) && std::isfinite(field_.p[c]) &&
            std::isfinite(field_.q[c])))
        throw NumericalError("non-finite state in cell " + std::to_string(c) + " at t = " +
                             std::to_string(field_.t));
  }
  if (clamped > 0) {
    double vol = 0.0;
    for (int c = 0; c < nc; ++c) vol += clamp_scratch_[c] * mesh_->cell_area[c];
    clamp_correction_ += vol;
  }

  rain_in_ += dt * rain_rate * total_area_;
  outflow_out_ += 0.5 * dt * (outflow1 + outflow2);
  field_.t += dt;
}

double Simulation::step_to(double t_target) {
  if (field_.t >= t_target) return 0.0;
  double dt = cfl_dt_checked();
  double cap = t_target;
  const double rain_boundary = rain_.next_boundary_after(field_.t);
  if (rain_boundary < cap) cap = rain_boundary;
  bool hit = false;
  if (field_.t + dt >= cap) {
    dt = cap - field_.t;
    hit = true;
  }
  if (dt <= 0.0) {
    field_.t = cap;  // sub-epsilon gap
    return 0.0;
  }
  advance(dt);
  if (hit) field_.t = cap;  // land exactly on schedule boundaries
  return dt;
}

void Simulation::advance_to(double t_target) {
  while (field_.t < t_target) step_to(t_target);
}

MassLedger Simulation::ledger() const {
  MassLedger l;
  const int nc = mesh_->n_cells();
  for (int c = 0; c < nc; ++c) {
    const double area = mesh_->cells[c].area;
    l.surface_volume += std::max(field_.w[c] - mesh_->cells[c].b_center, 0.0) * area;
    l.infiltrated_volume += ic_[c] * area;
  }
  l.rain_in = rain_in_;
  l.outflow_out = outflow_out_;
  l.clamp_correction = clamp_correction_;
  l.initial_volume = initial_volume_;
  return l;
}

double Simulation::outlet_discharge() const {
  return hydrofv::outlet_discharge(*mesh_, field_, params_);
}

}  // namespace hydrofv
