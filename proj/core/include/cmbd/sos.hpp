#pragma once

#include <optional>
#include <vector>

#include "cmbd/sequence.hpp"

namespace cmbd {

/// Discrete sum-of-sincs kernel h[m] = sum_{k in K} e^{j k omega0 m}, m in [0, M_h).
struct SosKernel {
  std::vector<int> ks;
  double omega0 = 0.0;
  int length = 0;  // M_h
};

ComplexSequence sos_impulse(const SosKernel& kernel);

struct KernelAcquisitionOptions {
  /// Sample indices of y * h to use, inside [M - 1, M_h - 1]. Defaults to all.
  std::optional<std::vector<int>> sample_indices;
  /// Largest tolerated condition number of the Vandermonde system.
  double max_condition = 1e10;
};

/// Recovers {Y(e^{j k omega0})}_{k in K} of y supported in [0, signal_length)
/// from the samples m in [M - 1, M_h - 1] of y * h, solving the Vandermonde
/// system in least squares. Requires M_h >= M + |K| - 1 and distinct
/// e^{j k omega0}; throws ConditioningError when the system is worse
/// conditioned than max_condition.
CVector acquire_via_kernel(const ComplexSequence& y, int signal_length, const SosKernel& kernel,
                           const KernelAcquisitionOptions& options = {});

}  // namespace cmbd
