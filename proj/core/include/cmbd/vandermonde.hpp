#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cmbd/types.hpp"

namespace cmbd {

/// rows x columns matrix with entry(r, c) = generators[r]^c.
class VandermondeOperator {
 public:
  VandermondeOperator() = default;
  VandermondeOperator(std::vector<Complex> generators, int columns);

  int rows() const noexcept { return static_cast<int>(generators_.size()); }
  int columns() const noexcept { return columns_; }
  const std::vector<Complex>& generators() const noexcept { return generators_; }

  Complex entry(int row, int column) const { return ipow(generators_[row], column); }
  CMatrix matrix() const;
  /// All rows, the listed columns.
  CMatrix columns_subset(std::span<const int> columns) const;
  /// The listed rows, all columns.
  VandermondeOperator rows_subset(std::span<const int> rows) const;

 private:
  std::vector<Complex> generators_;
  int columns_ = 0;
};

enum class SparkStatus { full_spark, deficient, uncertified };

struct SparkOptions {
  std::uint64_t max_submatrices = 2'000'000;
  /// A square submatrix is invertible when sigma_min > tolerance * sigma_max.
  double relative_tolerance = 1e-10;
};

struct SparkCertificate {
  SparkStatus status = SparkStatus::uncertified;
  /// First failing column set in lexicographic order (deficient only).
  std::vector<int> witness;
  std::uint64_t submatrices_checked = 0;
  std::uint64_t submatrices_total = 0;  // saturates at UINT64_MAX

  bool full_spark() const noexcept { return status == SparkStatus::full_spark; }
};

/// Exhaustively checks every rows x rows column submatrix. Returns
/// uncertified, without checking anything, when C(columns, rows) exceeds
/// the budget. Requires rows <= columns.
SparkCertificate certify_full_spark(const VandermondeOperator& op, const SparkOptions& options = {});

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace cmbd
