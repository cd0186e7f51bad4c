#pragma once

// Reference computations used only by the tests. They work on plain
// std::vector<std::complex<double>> and share no code with the library.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// sum_m x[m] e^{-j w m}, x given from index `offset`.
inline C dtft(const Vec& x, double w, long offset = 0) {
  C acc{};
  for (std::size_t m = 0; m < x.size(); ++m) {
    acc += x[m] * std::exp(C(0.0, -w * (static_cast<double>(m) + static_cast<double>(offset))));
  }
  return acc;
}

inline Vec convolve(const Vec& a, const Vec& b) {
  if (a.empty() || b.empty()) return {};
  Vec out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Roots in w = z^{-1} of sum_m a[m] w^m via the companion matrix.
inline Vec roots(Vec a) {
  while (!a.empty() && a.back() == C{}) a.pop_back();
  const auto n = static_cast<Eigen::Index>(a.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -a[static_cast<std::size_t>(i)] / a.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  Vec out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

/// Smallest distance between a root of a and a root of b, ignoring w = 0.
inline double nearest_root_distance(const Vec& a, const Vec& b) {
  double best = INFINITY;
  for (const C& ra : roots(a)) {
    for (const C& rb : roots(b)) best = std::min(best, std::abs(ra - rb) / std::max(1.0, std::abs(ra)));
  }
  return best;
}

inline double norm(const Vec& v) {
  double s = 0.0;
  for (const C& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// Determinant by Gaussian elimination with partial pivoting.
inline C det(std::vector<Vec> m) {
  const std::size_t n = m.size();
  C d = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    }
    if (m[p][c] == C{}) return 0.0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const C f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

}  // namespace oracle
