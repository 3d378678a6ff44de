#pragma once

#include <string>
#include <vector>

namespace hydrofv {

/// Outlet discharge time series, strictly increasing in t.
struct HydrographSeries {
  std::vector<double> t;  // [s]
  std::vector<double> q;  // [m^3/s]

  void push(double time, double discharge);
  std::size_t size() const { return t.size(); }
};

/// Root-mean-square discharge error, with the simulated series linearly
/// interpolated to the observed sample times (which must lie inside the
/// simulated time range).
double rmse(const HydrographSeries& simulated, const HydrographSeries& observed);

/// CSV with header "t_s,Q_m3s" and %.10e rows.
std::string write_hydrograph_csv(const HydrographSeries& series);
HydrographSeries read_hydrograph_csv(const std::string& text);

}  // namespace hydrofv
