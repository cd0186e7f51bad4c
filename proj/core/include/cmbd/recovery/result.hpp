#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmbd/grid.hpp"
#include "cmbd/measurement.hpp"
#include "cmbd/sequence.hpp"

namespace cmbd {

/// Source spectrum samples S(z_k) on a set of grid indices.
struct SpectrumSamples {
  std::vector<int> ks;
  CVector values;

  /// Throws PreconditionError when k is not sampled.
  Complex at(int k) const;
  bool contains(int k) const;
  CVector on(std::span<const int> indices) const;
};

enum class RecoveryStatus {
  ok,
  not_converged,
  degenerate,         // a division by a vanishing iterate entry was required
  non_unique,         // more than one non-equivalent solution
  not_coprime,        // recovered filters share a zero
  alignment_failure,  // inter-pair shift or source frame could not be resolved
};

std::string to_string(RecoveryStatus status);

struct RecoveryResult {
  std::vector<ComplexSequence> filters;
  std::optional<SpectrumSamples> source_spectrum;
  std::optional<ComplexSequence> source_time;
  int iterations = 0;
  bool converged = false;
  RecoveryStatus status = RecoveryStatus::ok;
  double initial_objective = std::numeric_limits<double>::quiet_NaN();
  double final_objective = std::numeric_limits<double>::quiet_NaN();
  /// Per-iteration objective for iterative solvers that track one.
  std::vector<double> objective_trace;
};

/// Splits gamma = [x_1; x_2] into two sequences on [0, support_bound).
std::vector<ComplexSequence> split_stacked(const CVector& gamma, int support_bound);
CVector stack_filters(std::span<const ComplexSequence> filters, int support_bound);

/// Moves a blind estimate into the canonical frame: the first tap of
/// filters[0] above relative_threshold * max|tap| becomes 1 at index 0.
/// A present source spectrum is transformed consistently.
void canonicalize(RecoveryResult& result, const FrequencyGrid& grid,
                  double relative_threshold = 1e-9);

/// Least-squares source spectrum over the listed channels given filter
/// estimates: S_k = sum_n conj(X_n(z_k)) Y_n(z_k) / sum_n |X_n(z_k)|^2.
SpectrumSamples estimate_source_spectrum(const MeasurementSet& measurements,
                                         std::span<const ComplexSequence> filters,
                                         std::span<const std::size_t> channels);

}  // namespace cmbd
