#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cmbd/types.hpp"

namespace cmbd {

/// Finite-support complex sequence x[m], m in [offset, offset + size).
///
/// Stored in trimmed canonical form: the first and last stored samples are
/// non-zero, or the sequence is the zero sequence (no samples, offset 0).
/// Trimming removes only exact zeros, so z = 0 factors never show up as
/// spurious polynomial roots.
class ComplexSequence {
 public:
  ComplexSequence() = default;
  explicit ComplexSequence(std::vector<Complex> values, std::ptrdiff_t offset = 0);

  static ComplexSequence delta(std::ptrdiff_t at = 0, Complex amplitude = 1.0);
  static ComplexSequence from_dense(const CVector& values, std::ptrdiff_t offset = 0);

  bool is_zero() const noexcept { return values_.empty(); }
  std::ptrdiff_t offset() const noexcept { return offset_; }
  /// One past the last stored index.
  std::ptrdiff_t end() const noexcept {
    return offset_ + static_cast<std::ptrdiff_t>(values_.size());
  }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }

  /// x[m]; zero outside the stored window.
  Complex operator[](std::ptrdiff_t m) const noexcept;

  /// Samples on the window [begin, begin + length), zero-padded.
  CVector dense(std::ptrdiff_t begin, std::size_t length) const;

  /// S_m(x): y[n] = x[n - m].
  ComplexSequence shifted(std::ptrdiff_t m) const;
  ComplexSequence scaled(Complex factor) const;

  double norm() const noexcept;
  double squared_norm() const noexcept;
  /// Number of samples with |x[m]| > tolerance.
  std::size_t nnz(double tolerance = 0.0) const noexcept;
  /// Indices of samples with |x[m]| > tolerance.
  std::vector<std::ptrdiff_t> support(double tolerance = 0.0) const;

  /// True iff the support lies inside [begin, end).
  bool within(std::ptrdiff_t begin, std::ptrdiff_t end) const noexcept;

  friend ComplexSequence operator+(const ComplexSequence& a, const ComplexSequence& b);
  friend ComplexSequence operator-(const ComplexSequence& a, const ComplexSequence& b);
  friend bool operator==(const ComplexSequence&, const ComplexSequence&) = default;

 private:
  void trim();

  std::vector<Complex> values_;
  std::ptrdiff_t offset_ = 0;
};

/// Largest |a[m] - b[m]| over the union of supports.
double max_abs_difference(const ComplexSequence& a, const ComplexSequence& b);

}  // namespace cmbd
