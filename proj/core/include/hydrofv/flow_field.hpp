#pragma once

#include <cstddef>
#include <vector>

namespace hydrofv {

inline constexpr double kGravity = 9.81;

/// Conserved cell state: surface elevation w = h + B and discharges p = hu, q = hv.
struct ConservedState {
  double w = 0.0;
  double p = 0.0;
  double q = 0.0;
};

/// Per-cell conserved averages plus the simulation clock.
struct FlowField {
  std::vector<double> w;
  std::vector<double> p;
  std::vector<double> q;
  double t = 0.0;

  FlowField() = default;
  explicit FlowField(std::size_t n) : w(n, 0.0), p(n, 0.0), q(n, 0.0) {}

  std::size_t size() const { return w.size(); }
  ConservedState state(std::size_t j) const { return {w[j], p[j], q[j]}; }
};

}  // namespace hydrofv
