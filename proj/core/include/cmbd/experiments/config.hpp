#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cmbd/recovery/bdc.hpp"
#include "cmbd/recovery/exhaustive.hpp"
#include "cmbd/recovery/tpi.hpp"
#include "cmbd/signals.hpp"

namespace cmbd {

enum class SolverId { nb_omp, bdc, tpi, exhaustive, eigen, pairwise };
enum class ExperimentKind { sparse, fir, pairwise };
enum class SourceModel { gaussian_mixture, linear_complexity, explicit_random };

std::string to_string(SolverId id);
std::string to_string(ExperimentKind kind);
std::string to_string(SourceModel model);
SolverId solver_from_string(std::string_view name);

/// Inclusive integer sweep {start, start + step, ..., <= stop} or an
/// explicit list when `values` is non-empty.
struct Sweep {
  int start = 1;
  int stop = 1;
  int step = 1;
  std::vector<int> values;

  std::vector<int> expand() const;
  static Sweep single(int v) { return {v, v, 1, {}}; }
  static Sweep list(std::vector<int> v) { return {0, 0, 1, std::move(v)}; }
};

/// One Monte Carlo experiment.
///
/// sparse:   L-sparse filters, Fourier-defined or linear-complexity source,
///           consecutive grid {1..K} with omega0 = 2 pi / M-bar.
/// fir:      full-length filters (L = M_x), linear-complexity source of
///           length M_s = K + M_x, eigenvector solver.
/// pairwise: N channels in pairs sharing K indices with two-index overlaps,
///           source of length M_s, stitched recovery.
struct ExperimentConfig {
  std::string id = "experiment";
  ExperimentKind kind = ExperimentKind::sparse;
  std::vector<SolverId> solvers{SolverId::tpi};
  Sweep sparsity = Sweep::single(4);  // L
  /// M_x; 0 selects 2 L^2.
  int support_bound = 0;
  /// M for Fourier-defined sources; 0 selects 2 M_x.
  int period = 0;
  int channels = 2;
  /// Pairs solved blindly in the pairwise kind; 0 selects channels / 2.
  int pairs = 0;
  ConvolutionMode mode = ConvolutionMode::linear;
  SourceModel source = SourceModel::gaussian_mixture;
  /// Source length M_s for linear-complexity and explicit sources in the
  /// sparse and pairwise kinds; 0 selects M.
  int source_length = 0;
  Sweep measurements = Sweep{1, 64, 1, {}};  // K
  Sweep complexity = Sweep::single(1);       // L_c
  bool complex_amplitudes = false;
  int trials = 200;
  std::uint64_t seed = 1;
  double threshold_db = -50.0;
  double nonvanishing_tolerance = 1e-9;
  int max_resamples = 100;
  TpiOptions tpi = [] { TpiOptions o; o.refine_support = true; return o; }();
  BdcOptions bdc = [] { BdcOptions o; o.refine_support = true; return o; }();
  ExhaustiveOptions exhaustive;

  void validate() const;
  int resolved_support_bound(int sparsity) const;
  int resolved_period(int sparsity) const;
  int resolved_pairs() const { return pairs > 0 ? pairs : channels / 2; }
};

/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(std::string_view text);
std::string config_to_json(const ExperimentConfig& config);

}  // namespace cmbd
