#pragma once

#include <array>
#include <optional>

#include "cmbd/alignment.hpp"
#include "cmbd/recovery/bdc.hpp"
#include "cmbd/recovery/exhaustive.hpp"
#include "cmbd/recovery/tpi.hpp"

namespace cmbd {

enum class PairSolver { bdc, tpi, exhaustive };

struct OverlapAmbiguity {
  /// Maps pair B into pair A's frame: a_k = scale_ratio e^{j k omega0 shift_delta} b_k.
  Complex scale_ratio{1.0, 0.0};
  int shift_delta = 0;
};

/// Resolves the relative scale and integer shift between two estimates of
/// the same source spectrum from their values at two shared frequencies.
/// Throws PreconditionError for zero values or k1 == k2, Error when the
/// admissible range is too wide for the frequency gap (phase wrap) or no
/// integer fits within tolerance_rad.
OverlapAmbiguity relative_ambiguity_from_overlap(std::array<Complex, 2> pair_a,
                                                 std::array<Complex, 2> pair_b,
                                                 std::array<int, 2> ks, double omega0,
                                                 ShiftRange admissible,
                                                 double tolerance_rad = 1e-6);

struct PairwiseOptions {
  PairSolver solver = PairSolver::tpi;
  TpiOptions tpi = [] { TpiOptions o; o.refine_support = true; return o; }();
  BdcOptions bdc = [] { BdcOptions o; o.refine_support = true; return o; }();
  ExhaustiveOptions exhaustive;
  double shift_tolerance_rad = 1e-6;
  /// Number of leading channel pairs (0,1), (2,3), ... used blindly; the
  /// longest valid chain when absent.
  std::optional<int> pair_count;
  /// Relative residual below which a source frame offset fits the data.
  double frame_tolerance = 1e-6;
};

/// Two-channel blind recovery on each pair, sequential removal of the
/// inter-pair scale/shift through two overlapping frequencies, source
/// reconstruction from the stitched spectrum, and non-blind OMP on the
/// remaining channels. Fourier grids only. Filters and source are returned in
/// the frame where the source starts at index 0.
RecoveryResult pairwise_source_recovery(const MeasurementSet& measurements, int sparsity,
                                        int support_bound, int source_length,
                                        const PairwiseOptions& options = {});

/// Solves one channel pair with the configured blind solver and moves the
/// result to the canonical frame, with the LS source spectrum on K.
RecoveryResult solve_pair(const MeasurementSet& measurements, std::size_t first,
                          std::size_t second, int sparsity, int support_bound,
                          const PairwiseOptions& options);

}  // namespace cmbd
