#pragma once

#include <cstdint>
#include <vector>

#include "cmbd/recovery/cross_relation.hpp"

namespace cmbd {

struct ExhaustiveOptions {
  /// Upper bound on C(M_x, L)^2 support pairs.
  std::uint64_t budget = 20'000'000;
  /// A support pair solves B gamma = 0 when sigma_min <= tolerance * ||B||_2.
  double null_tolerance = 1e-8;
  /// Two solutions are equivalent when their aligned error is below this.
  double orbit_tolerance_db = -80.0;
  /// Solutions kept in the result.
  std::size_t max_stored_solutions = 4096;
  /// Stop the enumeration as soon as non-uniqueness is established.
  bool stop_when_non_unique = true;
};

struct CandidateSolution {
  std::vector<int> support_first;   // T_1 in [0, M_x)
  std::vector<int> support_second;  // T_2 in [0, M_x)
  CVector gamma;                    // unit norm, length 2 M_x
  double sigma_min = 0.0;
  /// Null space of the restricted block has dimension > 1.
  bool degenerate = false;
};

struct ExhaustiveResult {
  std::vector<CandidateSolution> solutions;  // canonical (lexicographic) order
  std::uint64_t solution_count = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t pairs_total = 0;
  /// Orbit clusters found; a lower bound when the enumeration stopped early.
  int clusters = 0;
  /// Some support pair had a null space of dimension > 1.
  bool degenerate = false;
  bool unique_up_to_ambiguity = false;
};

/// Enumerates every pair of L-supports (T_1, T_2), tests the smallest
/// singular value of B restricted to T_1 and M_x + T_2, and clusters the
/// null-space solutions by shift/scale equivalence. Throws BudgetExceeded
/// when C(M_x, L)^2 exceeds the budget.
ExhaustiveResult exhaustive_search(const CrossRelationSystem& system, int sparsity,
                                   const ExhaustiveOptions& options = {});

}  // namespace cmbd
