#pragma once

#include <span>
#include <string>

#include "hydrofv/flow_field.hpp"
#include "hydrofv/mesh.hpp"

namespace hydrofv {

/// Legacy ASCII VTK unstructured grid: triangle cells (type 5) with CELL_DATA
/// scalars w, h, p, q, u, v, B, Ic. `ic` may be empty (written as zeros).
std::string field_vtk_text(const Mesh& mesh, const FlowField& field, std::span<const double> ic,
                           double h_eps = 1e-6);

void write_field_vtk(const Mesh& mesh, const FlowField& field, std::span<const double> ic,
                     const std::string& path, double h_eps = 1e-6);

}  // namespace hydrofv
