#include "cmbd/vandermonde.hpp"

#include <limits>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "cmbd/errors.hpp"

namespace cmbd {

VandermondeOperator::VandermondeOperator(std::vector<Complex> generators, int columns)
    : generators_(std::move(generators)), columns_(columns) {
  if (columns < 0) throw PreconditionError("VandermondeOperator: negative column count");
}

CMatrix VandermondeOperator::matrix() const {
  CMatrix out(rows(), columns_);
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < columns_; ++c) out(r, c) = entry(r, c);
  }
  return out;
}

CMatrix VandermondeOperator::columns_subset(std::span<const int> columns) const {
  CMatrix out(rows(), static_cast<Eigen::Index>(columns.size()));
  for (int r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out(r, static_cast<Eigen::Index>(c)) = entry(r, columns[c]);
    }
  }
  return out;
}

VandermondeOperator VandermondeOperator::rows_subset(std::span<const int> rows) const {
  std::vector<Complex> g;
  g.reserve(rows.size());
  for (const int r : rows) g.push_back(generators_.at(static_cast<std::size_t>(r)));
  return VandermondeOperator(std::move(g), columns_);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

namespace {

/// Advances a sorted k-combination of [0, n); false after the last one.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

SparkCertificate certify_full_spark(const VandermondeOperator& op, const SparkOptions& options) {
  const int rows = op.rows();
  const int cols = op.columns();
  if (rows > cols) {
    throw PreconditionError("certify_full_spark: rows (" + std::to_string(rows) +
                            ") exceed columns (" + std::to_string(cols) + ")");
  }
  SparkCertificate cert;
  cert.submatrices_total = binomial(static_cast<std::uint64_t>(cols), static_cast<std::uint64_t>(rows));
  if (rows == 0) {
    cert.status = SparkStatus::full_spark;
    return cert;
  }
  if (cert.submatrices_total > options.max_submatrices) {
    cert.status = SparkStatus::uncertified;
    return cert;
  }
  const CMatrix full = op.matrix();
  std::vector<int> combo(static_cast<std::size_t>(rows));
  std::iota(combo.begin(), combo.end(), 0);
  CMatrix sub(rows, rows);
  do {
    for (int c = 0; c < rows; ++c) sub.col(c) = full.col(combo[static_cast<std::size_t>(c)]);
    Eigen::JacobiSVD<CMatrix> svd(sub);
    const auto& sv = svd.singularValues();
    ++cert.submatrices_checked;
    if (!(sv(rows - 1) > options.relative_tolerance * sv(0))) {
      cert.status = SparkStatus::deficient;
      cert.witness = combo;
      return cert;
    }
  } while (next_combination(combo, cols));
  cert.status = SparkStatus::full_spark;
  return cert;
}

}  // namespace cmbd
