#include "cmbd/recovery/exhaustive.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>

#include "cmbd/alignment.hpp"
#include "cmbd/errors.hpp"
#include "cmbd/recovery/result.hpp"
#include "cmbd/vandermonde.hpp"

namespace cmbd {

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace

ExhaustiveResult exhaustive_search(const CrossRelationSystem& system, int sparsity,
                                   const ExhaustiveOptions& options) {
  const int mx = system.support_bound;
  if (sparsity < 1 || sparsity > mx) throw PreconditionError("exhaustive: need 1 <= L <= M_x");
  const std::uint64_t per_block = binomial(static_cast<std::uint64_t>(mx), static_cast<std::uint64_t>(sparsity));
  const bool overflow = per_block != 0 && per_block > UINT64_MAX / per_block;
  const std::uint64_t total = overflow ? UINT64_MAX : per_block * per_block;
  if (total > options.budget) {
    throw BudgetExceeded("exhaustive: C(M_x, L)^2 = " + std::to_string(total) +
                         " support pairs exceed the budget of " + std::to_string(options.budget));
  }

  const auto supports = combinations(mx, sparsity);
  const int width = 2 * sparsity;
  const auto k_count = static_cast<int>(system.b.rows());
  const int padding = std::max(0, width - k_count);
  const double b_norm = spectral_norm(system.b);
  const double cutoff = options.null_tolerance * b_norm;
  // Gram eigenvalues screen candidates cheaply; the SVD confirms survivors.
  const double screen = 1e-12 * b_norm * b_norm;
  const CMatrix gram = system.b.adjoint() * system.b;
  const ShiftRange range = ShiftRange::for_support_bound(mx);

  ExhaustiveResult out;
  out.pairs_total = total;
  std::vector<std::vector<ComplexSequence>> representatives;
  std::vector<int> cols(static_cast<std::size_t>(width));
  CMatrix sub_gram(width, width);
  CMatrix sub(k_count, width);
  bool stopped = false;

  for (const auto& t1 : supports) {
    for (const auto& t2 : supports) {
      ++out.pairs_checked;
      for (int i = 0; i < sparsity; ++i) {
        cols[static_cast<std::size_t>(i)] = t1[static_cast<std::size_t>(i)];
        cols[static_cast<std::size_t>(sparsity + i)] = mx + t2[static_cast<std::size_t>(i)];
      }
      if (padding == 0) {
        for (int r = 0; r < width; ++r) {
          for (int c = 0; c < width; ++c) sub_gram(r, c) = gram(cols[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(sub_gram, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues()(0) > screen) continue;
      }
      for (int c = 0; c < width; ++c) sub.col(c) = system.b.col(cols[static_cast<std::size_t>(c)]);
      Eigen::JacobiSVD<CMatrix> svd(sub, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const double sigma_min = padding > 0 ? 0.0 : sv(sv.size() - 1);
      if (sigma_min > cutoff) continue;

      int nullity = padding;
      for (Eigen::Index i = 0; i < sv.size(); ++i) nullity += sv(i) <= cutoff ? 1 : 0;

      CandidateSolution cand;
      cand.support_first = t1;
      cand.support_second = t2;
      cand.sigma_min = sigma_min;
      cand.degenerate = nullity > 1;
      cand.gamma = CVector::Zero(2 * mx);
      const CVector v = svd.matrixV().col(width - 1);
      for (int c = 0; c < width; ++c) cand.gamma(cols[static_cast<std::size_t>(c)]) = v(c);
      ++out.solution_count;
      out.degenerate = out.degenerate || cand.degenerate;

      const auto filters = split_stacked(cand.gamma, mx);
      bool matched = false;
      for (const auto& rep : representatives) {
        if (align_up_to_shift_scale(rep, filters, range).error_db <= options.orbit_tolerance_db) {
          matched = true;
          break;
        }
      }
      if (!matched) {
        representatives.push_back(filters);
        ++out.clusters;
      }
      if (out.solutions.size() < options.max_stored_solutions) out.solutions.push_back(std::move(cand));
      if (options.stop_when_non_unique && (out.clusters > 1 || out.degenerate)) {
        stopped = true;
        break;
      }
    }
    if (stopped) break;
  }
  out.unique_up_to_ambiguity = out.clusters == 1 && !out.degenerate;
  return out;
}

}  // namespace cmbd
