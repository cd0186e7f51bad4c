#pragma once

#include <optional>

#include "cmbd/recovery/cross_relation.hpp"
#include "cmbd/recovery/result.hpp"

namespace cmbd {

struct TpiOptions {
  /// Shift of G = beta I - B^H B; defaults to ||B||_2^2.
  std::optional<double> beta;
  int max_iterations = 1000;
  /// Stop once ||gamma^(i) - gamma^(i-1)||_2 <= tolerance.
  double tolerance = 1e-3;
  /// Replace the final iterate by the exact null vector of B restricted to
  /// its support.
  bool refine_support = false;
};

/// Keeps the L largest-magnitude entries independently in [0, M_x) and
/// [M_x, 2 M_x); ties go to the lower index.
CVector truncate_blocks(const CVector& gamma, int sparsity, int support_bound);

/// [omp(Abar, y_1, L); omp(Abar, y_2, L)].
CVector omp_initialization(const CrossRelationSystem& system, int sparsity);

/// Truncated power iteration for min gamma^H B^H B gamma subject to
/// ||gamma_1||_0, ||gamma_2||_0 <= L and ||gamma|| = 1. Records the
/// objective at the normalised start and at the returned iterate, which is
/// moved to the canonical frame.
RecoveryResult tpi(const CrossRelationSystem& system, int sparsity, const CVector& gamma0,
                   const TpiOptions& options = {});

}  // namespace cmbd
