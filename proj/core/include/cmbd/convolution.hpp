#pragma once

#include <cstddef>

#include "cmbd/sequence.hpp"

namespace cmbd {

/// Linear convolution a * b. The zero sequence absorbs.
ComplexSequence linear_convolve(const ComplexSequence& a, const ComplexSequence& b);

/// Circular convolution over one period [0, period). Both supports must lie
/// in [0, period); throws PreconditionError otherwise.
ComplexSequence circular_convolve(const ComplexSequence& a, const ComplexSequence& b,
                                  std::size_t period);

}  // namespace cmbd
