#pragma once

#include <span>
#include <vector>

#include "cmbd/measurement.hpp"

namespace cmbd {

/// B = [diag(y_2) Abar, -diag(y_1) Abar] with Abar the |K| x M_x sensing
/// operator; B [x_1; x_2] = 0 for consistent noiseless measurements.
struct CrossRelationSystem {
  CMatrix b;
  CMatrix abar;
  CVector y1;
  CVector y2;
  std::vector<int> ks;
  int support_bound = 0;
  FrequencyGrid grid;
};

/// Requires the two channels to share one index set.
CrossRelationSystem build_cross_relation(const MeasurementSet& measurements, int support_bound,
                                         std::size_t first = 0, std::size_t second = 1);

/// Largest singular value.
double spectral_norm(const CMatrix& m);

/// Unit-norm vector supported on the listed columns of B minimising
/// ||B gamma||: the trailing right singular vector of the column block.
CVector null_vector_on_support(const CMatrix& b, std::span<const int> columns);

}  // namespace cmbd
