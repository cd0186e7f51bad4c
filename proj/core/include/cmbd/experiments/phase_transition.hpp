#pragma once

#include <filesystem>
#include <vector>

#include "cmbd/experiments/trial.hpp"

namespace cmbd {

struct CellRate {
  CellKey cell;
  int trials = 0;
  int successes = 0;
  double rate() const { return trials > 0 ? static_cast<double>(successes) / trials : 0.0; }
};

struct PhaseTransitionGrid {
  ExperimentConfig config;
  std::vector<CellRate> cells;        // sweep order
  std::vector<TrialOutcome> trials;   // cell-major, then trial index
  double wall_time_ms = 0.0;

  /// Throws PreconditionError when the cell is absent.
  const CellRate& at(SolverId solver, int sparsity, int measurements, int complexity = 0) const;
};

/// Cells of the sweep in output order.
std::vector<CellKey> expand_cells(const ExperimentConfig& config);

/// Runs every (cell, trial) on a worker pool. The worker count is
/// CMBD_THREADS when set, else the hardware concurrency; results do not
/// depend on it.
PhaseTransitionGrid run_phase_transition(const ExperimentConfig& config);

/// The fir kind with the eigenvector solver and K = M_s - M_x.
PhaseTransitionGrid run_fir_comparison(ExperimentConfig config);

/// Writes grid.csv, trials.csv and meta.json into the directory.
void write_phase_transition(const std::filesystem::path& directory, const PhaseTransitionGrid& grid);

std::string grid_csv(const PhaseTransitionGrid& grid);
std::string trials_csv(const PhaseTransitionGrid& grid);
std::string meta_json(const PhaseTransitionGrid& grid);

}  // namespace cmbd
