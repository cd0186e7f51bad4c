#pragma once

#include <optional>

#include "cmbd/recovery/result.hpp"

namespace cmbd {

struct BdcOptions {
  int max_iterations = 200;
  /// Stop once ||X^(i) - X^(i-1)||_F <= tolerance.
  double tolerance = 1e-3;
  /// s^(0); all ones when absent.
  std::optional<CVector> initial_spectrum;
  /// Replace the final two-channel estimate by the exact cross-relation null
  /// vector on the identified supports.
  bool refine_support = false;
};

/// Blind dictionary calibration by alternating minimisation on
/// Y = diag(s) Abar X: sparse coding of diag(s)^{-1} Y by column-wise OMP,
/// then the per-frequency least-squares update of s. All channels must
/// share one index set. A vanishing s entry or update denominator stops
/// the iteration with status degenerate. Results are in the canonical frame.
RecoveryResult bdc(const MeasurementSet& measurements, int sparsity, int support_bound,
                   const BdcOptions& options = {});

}  // namespace cmbd
