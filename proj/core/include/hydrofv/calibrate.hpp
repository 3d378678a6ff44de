#pragma once

#include <span>
#include <vector>

#include "hydrofv/hydrograph.hpp"
#include "hydrofv/run_config.hpp"

namespace hydrofv {

struct CalibrationRow {
  double n = 0.0;
  double rmse = 0.0;
};

struct CalibrationResult {
  double n_best = 0.0;
  std::vector<CalibrationRow> table;
};

/// Runs the scenario once per Manning coefficient in n_grid and returns the
/// minimizer of the hydrograph RMSE against `observed` (ties go to the
/// smaller n). A failing run propagates with the offending n in the message.
CalibrationResult calibrate_manning(const RunConfig& config, const HydrographSeries& observed,
                                    std::span<const double> n_grid);

}  // namespace hydrofv
