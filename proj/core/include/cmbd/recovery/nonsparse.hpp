#pragma once

#include "cmbd/recovery/cross_relation.hpp"
#include "cmbd/recovery/result.hpp"

namespace cmbd {

struct EigenOptions {
  /// Second-smallest singular value of B (zero-padded to 2 M_x) below
  /// tolerance * ||B||_2 means the null space is not one-dimensional.
  double uniqueness_tolerance = 1e-8;
};

/// Minimum-eigenvalue eigenvector of B^H B, split into (x_1, x_2) and
/// moved to the canonical frame. Flags non_unique for a degenerate
/// smallest eigenvalue and not_coprime when the two estimates share a zero.
RecoveryResult nonsparse_eigen(const CrossRelationSystem& system, const EigenOptions& options = {});

}  // namespace cmbd
