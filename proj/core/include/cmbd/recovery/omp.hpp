#pragma once

#include <vector>

#include "cmbd/recovery/result.hpp"

namespace cmbd {

struct OmpResult {
  CVector coefficients;
  std::vector<int> support;
  /// False when a selected column set became rank deficient or L exceeded
  /// the column count; the coefficients are then a best effort.
  bool converged = true;
};

/// Orthogonal matching pursuit: L greedy selections of the column most
/// correlated with the residual (normalised columns, lowest index on ties),
/// each followed by a least-squares refit on the whole selected support.
/// Stops early once the residual vanishes. Requires non-zero columns.
OmpResult omp(const CMatrix& a, const CVector& y, int sparsity,
              double residual_tolerance = 1e-13);

/// Non-blind OMP: for each channel, omp(Abar_n, diag(S)^{-1} y_n, L) with
/// the known source spectrum. Throws PreconditionError naming the first
/// index where the source vanishes.
RecoveryResult nb_omp(const MeasurementSet& measurements, const SpectrumSamples& source,
                      int sparsity, int support_bound);

}  // namespace cmbd
