#pragma once

#include <vector>

#include "cmbd/grid.hpp"
#include "cmbd/signals.hpp"

namespace cmbd {

/// Per-channel samples Y_n(z_k), k in K_n, with their grid.
struct MeasurementSet {
  FrequencyGrid grid;
  ConvolutionMode mode = ConvolutionMode::linear;
  std::vector<CVector> channels;

  void validate() const;
  /// [y_a y_b] for two channels sharing one index set.
  CMatrix pair_matrix(std::size_t a, std::size_t b) const;
};

struct MeasureOutcome {
  MeasurementSet measurements;
  /// (A4): |S(z_k)| > tolerance * max |S| on every sampled k.
  bool source_nonvanishing = true;
  double min_source_ratio = 0.0;
  std::vector<int> vanishing_indices;
};

/// S(z_k) for the listed indices. Fourier-defined sources read their DFT
/// table when the grid is the matching DFT grid; otherwise the time
/// realization is evaluated.
CVector source_on_grid(const RealizedSource& source, const FrequencyGrid& grid,
                       std::span<const int> ks);

/// Y_n(z_k) = S(z_k) X_n(z_k). Requires M-bar >= max{2 M_x - 1, M_s}; in
/// circular mode the grid must be the M-point DFT grid.
MeasureOutcome measure_fourier(const ChannelEnsemble& ensemble, const FrequencyGrid& grid,
                               double nonvanishing_tolerance = 1e-9);

/// Samples arbitrary time-domain outputs on the grid (no product model).
MeasurementSet measure_outputs(std::span<const ComplexSequence> outputs, const FrequencyGrid& grid,
                               ConvolutionMode mode = ConvolutionMode::linear);

}  // namespace cmbd
