#pragma once

#include <memory>
#include <optional>
#include <string>

#include "hydrofv/hydrograph.hpp"
#include "hydrofv/run_config.hpp"
#include "hydrofv/solver.hpp"

namespace hydrofv {

/// Everything run-ready built from a RunConfig.
struct Scenario {
  std::shared_ptr<const Mesh> mesh;
  FlowField initial;
  SolverParams params;
  RainSchedule rain;
  std::optional<SoilModel> soil;
};

Scenario build_scenario(const RunConfig& config);

struct LedgerRow {
  double t = 0.0;
  MassLedger ledger;
};

struct RunOutputs {
  HydrographSeries hydrograph;  // empty when the mesh has no OUTFLOW edges
  std::vector<LedgerRow> ledger_rows;
  FlowField final_field;
  std::vector<double> final_ic;
};

/// Advances a scenario from t = 0 to t_end, sampling the hydrograph, the mass
/// ledger, and (when write_files is set) VTK snapshots at the output schedule.
RunOutputs run_scenario(const RunConfig& config, bool write_files);

std::string ledger_csv(const std::vector<LedgerRow>& rows);

}  // namespace hydrofv
