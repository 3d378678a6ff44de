#include "hydrofv/calibrate.hpp"

#include <algorithm>
#include <string>

#include "hydrofv/errors.hpp"
#include "hydrofv/scenario.hpp"

namespace hydrofv {

CalibrationResult calibrate_manning(const RunConfig& config, const HydrographSeries& observed,
                                    std::span<const double> n_grid) {
  if (n_grid.empty()) throw ConfigError("calibrate_manning: empty n grid");
  for (double n : n_grid)
    if (!(n > 0.0)) throw ConfigError("calibrate_manning: grid values must be positive");

  std::vector<double> grid(n_grid.begin(), n_grid.end());
  std::sort(grid.begin(), grid.end());

  CalibrationResult result;
  double best = std::numeric_limits<double>::infinity();
  for (double n : grid) {
    RunConfig cfg = config;
    cfg.manning = n;
    RunOutputs out;
    try {
      out = run_scenario(cfg, /*write_files=*/false);
    } catch (const std::exception& e) {
      throw NumericalError("calibrate_manning: run failed for n = " + std::to_string(n) + ": " +
                           e.what());
    }
    const double err = rmse(out.hydrograph, observed);
    result.table.push_back({n, err});
    if (err < best) {  // strict: ties resolve toward the smaller n
      best = err;
      result.n_best = n;
    }
  }
  return result;
}

}  // namespace hydrofv
