#pragma once

#include <span>

#include "cmbd/sequence.hpp"

namespace cmbd {

/// X(e^{j k omega0}) = sum_m x[m] e^{-j k omega0 m} for each k.
/// omega0 must lie in (0, 2*pi).
CVector dtft_at(const ComplexSequence& x, double omega0, std::span<const int> ks);

/// X(z) = sum_m x[m] z^{-m} at each point. A point at the origin is only
/// allowed when no sample with m > 0 is non-zero (DomainError otherwise).
CVector z_eval(const ComplexSequence& x, std::span<const Complex> points);

/// Unit-circle point e^{j k omega0}.
inline Complex unit_point(int k, double omega0) {
  return std::polar(1.0, static_cast<double>(k) * omega0);
}

}  // namespace cmbd
