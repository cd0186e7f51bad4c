#pragma once

#include "cmbd/sequence.hpp"

namespace cmbd {

struct CoprimeReport {
  bool coprime = true;
  /// Degree of the numerical GCD of the two polynomials in z^{-1}.
  int shared_zero_count = 0;
};

/// Tests whether A(z) and B(z) share a zero away from z = 0, via the
/// numerical rank of their Sylvester matrix: singular values below
/// tolerance * sigma_max count as rank deficiency.
CoprimeReport coprimeness_check(const ComplexSequence& a, const ComplexSequence& b,
                                double tolerance = 1e-8);

/// Sylvester matrix of the trimmed coefficient vectors (exposed for tests).
CMatrix sylvester_matrix(const ComplexSequence& a, const ComplexSequence& b);

}  // namespace cmbd
