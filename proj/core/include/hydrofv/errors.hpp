#pragma once

#include <stdexcept>
#include <string>

namespace hydrofv {

/// Bad user input: config files, command-line values, out-of-range parameters.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent mesh input (degenerate triangles, dangling indices, ...).
struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Solver-side failures: NaN fields, blow-up detection, non-converged scalar solves.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File system / serialization failures, always carrying the path.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hydrofv
