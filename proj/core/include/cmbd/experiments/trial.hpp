#pragma once

#include <cstdint>
#include <string>

#include "cmbd/experiments/config.hpp"
#include "cmbd/grid.hpp"

namespace cmbd {

/// One cell coordinate of a phase-transition sweep.
struct CellKey {
  SolverId solver = SolverId::tpi;
  int sparsity = 0;
  int support_bound = 0;
  int measurements = 0;  // K
  int complexity = 0;    // L_c, 0 when unused
};

struct TrialOutcome {
  std::string config_id;
  CellKey cell;
  int trial = 0;
  std::uint64_t seed = 0;
  double aligned_error_db = 0.0;
  bool success = false;
  int iterations = 0;
  /// "ok", a RecoveryStatus name, "above_threshold", "precondition",
  /// "budget", "solver_error" or "resample_limit".
  std::string reason = "ok";
  int coprime_resamples = 0;
  int nonvanishing_resamples = 0;
  double wall_time_ms = 0.0;
};

/// Instance seed from the master seed, the instance coordinates (L, M_x,
/// K, L_c) and the trial index. The solver is not part of it, so every
/// solver sees the same instances.
std::uint64_t trial_seed(std::uint64_t master, const CellKey& cell, int trial);

/// Generates, measures, solves and aligns one instance. Solver failures
/// become reason codes; only invalid configurations throw.
TrialOutcome run_trial(const ExperimentConfig& config, const CellKey& cell, int trial);

/// omega0 = min{4 pi / (M_s |K|), 2 pi / (2 M_x - 1)} with consecutive
/// indices starting at ceil((omega1 - 2 pi / M_s) / omega0), which keeps
/// every sample inside the main lobe of a single-exponential source with
/// root e^{j omega1}.
FrequencyGrid main_lobe_grid(int source_length, int support_bound, int count, double omega1,
                             std::size_t channels = 2);

/// Index sets for the pairwise kind: pair r uses
/// {r (K - 2) + 1, ..., r (K - 2) + K}; channels past the pairs use the
/// first 2L indices.
std::vector<std::vector<int>> pairwise_channel_sets(int channels, int pairs, int count,
                                                    int sparsity);

}  // namespace cmbd
