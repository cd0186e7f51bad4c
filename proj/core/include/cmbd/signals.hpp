#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmbd/rng.hpp"
#include "cmbd/sequence.hpp"

namespace cmbd {

/// One L-sparse channel filter supported inside [0, support_bound).
struct SparseFilterSpec {
  int sparsity = 0;       // L
  int support_bound = 0;  // M_x
  std::vector<int> support;
  std::vector<Complex> amplitudes;

  void validate() const;
  ComplexSequence sequence() const;
};

/// Draws L distinct support indices uniformly from [0, M_x) and amplitudes
/// uniform in [1, 2]. With complex_amplitudes the magnitude keeps that law
/// and a uniform phase is attached.
SparseFilterSpec random_sparse_filter(int sparsity, int support_bound, Rng& rng,
                                      bool complex_amplitudes = false);

struct ExplicitSamples {
  std::vector<Complex> samples;  // s[0..M_s)
};

/// s[m] = sum_l c_l r_l^m for m in [0, length).
struct LinearComplexity {
  std::vector<Complex> coefficients;
  std::vector<Complex> roots;
  int length = 0;  // M_s
};

struct GaussianPulse {
  double amplitude = 0.0;
  double center = 0.0;
  /// Spread parameter: the pulse is amplitude * exp(-variance * (k - center)^2)
  /// on the DFT index axis.
  double variance = 0.0;
};

/// Source defined directly by its M-point DFT table.
struct FourierGaussianMixture {
  std::vector<GaussianPulse> pulses;
  int grid_length = 0;  // M
};

using SourceSpec = std::variant<ExplicitSamples, LinearComplexity, FourierGaussianMixture>;

void validate(const SourceSpec& spec);
std::string source_kind(const SourceSpec& spec);

/// Time samples and, for Fourier-defined sources, the DFT table.
struct RealizedSource {
  ComplexSequence time;
  std::optional<CVector> dft_table;  // S(e^{j 2 pi k / M}), k in [0, M)
};

/// Linear-complexity sources are evaluated sample by sample. Fourier-defined
/// sources return their DFT table together with its inverse DFT on [0, M).
RealizedSource realize_source(const SourceSpec& spec);

/// The two-pulse mixture with triples (4, M/2, 0.001) and (1, 2M/3, 0.01).
FourierGaussianMixture gaussian_mixture_source(int grid_length);

/// c_l complex standard normal, r_l uniform on the unit circle.
LinearComplexity random_linear_complexity(int complexity, int length, Rng& rng);

/// i.i.d. complex standard normal samples on [0, length).
ExplicitSamples random_explicit_source(int length, Rng& rng);

/// Highest sample index + 1 of a source (M_s, or M for Fourier sources).
int source_length(const SourceSpec& spec);

enum class ConvolutionMode { linear, circular };

struct ChannelEnsemble {
  SourceSpec source;
  std::vector<SparseFilterSpec> filters;
  ConvolutionMode mode = ConvolutionMode::linear;
  int period = 0;  // M, used by circular mode

  void validate() const;
  std::vector<ComplexSequence> filter_sequences() const;
  /// y_n = s * x_n (linear) or s (*) x_n over one period (circular).
  std::vector<ComplexSequence> outputs() const;
};

}  // namespace cmbd
