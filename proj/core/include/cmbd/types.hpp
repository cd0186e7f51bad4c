#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace cmbd {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Integer power by repeated squaring; avoids the log/exp route of std::pow.
inline Complex ipow(Complex base, long long exponent) {
  if (exponent < 0) {
    base = 1.0 / base;
    exponent = -exponent;
  }
  Complex result{1.0, 0.0};
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace cmbd
