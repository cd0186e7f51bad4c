#pragma once

#include <span>

#include "cmbd/sequence.hpp"

namespace cmbd {

/// Reported error when the estimate lies in the orbit of the truth to 1e-12.
inline constexpr double kOrbitSentinelDb = -300.0;

struct ShiftRange {
  int lo = 0;
  int hi = 0;  // inclusive

  /// [-(M_x - 1), M_x - 1].
  static ShiftRange for_support_bound(int support_bound) {
    return {-(support_bound - 1), support_bound - 1};
  }
};

struct Alignment {
  Complex alpha{1.0, 0.0};
  int shift = 0;
  /// 20 log10(||X - alpha S_shift(Xhat)|| / ||X||), or kOrbitSentinelDb.
  double error_db = 0.0;
};

/// Finds the common scale alpha and shift m0 minimising
/// ||X - alpha S_m0(Xhat)|| jointly over all channels. For each candidate
/// shift alpha is the closed-form least-squares scale. Ties in the error
/// resolve to the smallest |m0|, then the smaller m0.
/// Throws PreconditionError for mismatched channel counts or a zero truth.
Alignment align_up_to_shift_scale(std::span<const ComplexSequence> truth,
                                  std::span<const ComplexSequence> estimate, ShiftRange range);

/// Filters and source aligned together: the filter alignment (alpha, m0)
/// is applied to the source estimate as 1/alpha and -m0. The error is the
/// worse of the filter and source errors.
Alignment align_ensemble(std::span<const ComplexSequence> truth_filters,
                         const ComplexSequence& truth_source,
                         std::span<const ComplexSequence> estimate_filters,
                         const ComplexSequence& estimate_source, ShiftRange range);

/// Relative error ratio to dB, with the orbit sentinel below 1e-12.
double ratio_to_db(double ratio);

}  // namespace cmbd
