#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cmbd/types.hpp"
#include "cmbd/vandermonde.hpp"

namespace cmbd {

enum class GridKind { fourier, z_domain };

/// Sampling points z = base^k for per-channel integer index sets K_n.
/// Fourier grids use base e^{j omega0}; z-domain grids use an arbitrary
/// non-unit base z0.
struct FrequencyGrid {
  GridKind kind = GridKind::fourier;
  double omega0 = 0.0;
  Complex z0{1.0, 0.0};
  int alias_bound = 0;  // M-bar
  std::vector<std::vector<int>> channel_sets;
  bool certified = false;

  static FrequencyGrid fourier(double omega0, int alias_bound,
                               std::vector<std::vector<int>> channel_sets);
  static FrequencyGrid z_domain(Complex z0, int alias_bound,
                                std::vector<std::vector<int>> channel_sets);

  std::size_t channels() const noexcept { return channel_sets.size(); }
  Complex base() const;
  Complex point(int k) const;
  std::vector<Complex> points(std::span<const int> ks) const;
  std::vector<Complex> channel_points(std::size_t channel) const;
  /// Sorted union of all channel index sets.
  std::vector<int> union_indices() const;

  /// Rows k in ks, columns m in [0, columns): entry base^{-k m}, so that
  /// the operator applied to x[0..columns) yields X(z_k).
  VandermondeOperator sensing_operator(std::span<const int> ks, int columns) const;

  /// Non-aliasing and |K_n| <= M-bar; throws PreconditionError.
  void validate() const;
};

/// omega0 = 2 pi / M-bar and K_n = {1, ..., K} for every channel. Certified
/// universal by construction.
FrequencyGrid consecutive_universal_grid(int count, int alias_bound, std::size_t channels = 2);

/// Operator for z-domain samples z_k = z0^{p_k}: generators z0^{-p_k}, so
/// row k evaluates X(z_k). z0 = 1 is rejected.
VandermondeOperator z_grid(Complex z0, std::span<const int> pks, int columns);

/// Re-checks a grid by exhaustive spark certification of each channel's
/// K_n x M-bar operator and stores the verdict in `certified`.
SparkCertificate certify_grid(FrequencyGrid& grid, const SparkOptions& options = {});

}  // namespace cmbd
