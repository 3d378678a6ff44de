#pragma once

#include <string>
#include <vector>

#include "hydrofv/run_config.hpp"

namespace hydrofv {

/// Built-in scenarios: slope_runoff, conservation_one_layer,
/// conservation_two_layer, complex_basin, lake_at_rest.
RunConfig scenario_preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace hydrofv
