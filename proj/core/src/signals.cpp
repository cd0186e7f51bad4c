#include "cmbd/signals.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cmbd/convolution.hpp"
#include "cmbd/errors.hpp"

namespace cmbd {

void SparseFilterSpec::validate() const {
  if (sparsity < 1 || support_bound < 1 || sparsity > support_bound) {
    throw PreconditionError("filter: need 1 <= L <= M_x (L=" + std::to_string(sparsity) +
                            ", M_x=" + std::to_string(support_bound) + ")");
  }
  if (support.size() != static_cast<std::size_t>(sparsity) ||
      amplitudes.size() != support.size()) {
    throw PreconditionError("filter: support and amplitudes must both have L entries");
  }
  std::vector<int> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("filter: support indices must be distinct");
  }
  if (sorted.front() < 0 || sorted.back() >= support_bound) {
    throw PreconditionError("filter: support index outside [0, M_x)");
  }
  for (const auto& a : amplitudes) {
    if (a == Complex{}) throw PreconditionError("filter: amplitudes must be non-zero");
  }
}

ComplexSequence SparseFilterSpec::sequence() const {
  std::vector<Complex> dense(static_cast<std::size_t>(support_bound));
  for (std::size_t i = 0; i < support.size(); ++i) {
    dense[static_cast<std::size_t>(support[i])] = amplitudes[i];
  }
  return ComplexSequence(std::move(dense), 0);
}

SparseFilterSpec random_sparse_filter(int sparsity, int support_bound, Rng& rng,
                                      bool complex_amplitudes) {
  if (sparsity < 1 || sparsity > support_bound) {
    throw PreconditionError("random_sparse_filter: need 1 <= L <= M_x");
  }
  // Partial Fisher-Yates: the first L slots are a uniform L-subset.
  std::vector<int> pool(static_cast<std::size_t>(support_bound));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < sparsity; ++i) {
    std::uniform_int_distribution<int> pick(i, support_bound - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  SparseFilterSpec spec;
  spec.sparsity = sparsity;
  spec.support_bound = support_bound;
  spec.support.assign(pool.begin(), pool.begin() + sparsity);
  std::sort(spec.support.begin(), spec.support.end());
  std::uniform_real_distribution<double> magnitude(1.0, 2.0);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  for (int i = 0; i < sparsity; ++i) {
    const double r = magnitude(rng);
    spec.amplitudes.push_back(complex_amplitudes ? std::polar(r, phase(rng)) : Complex{r, 0.0});
  }
  return spec;
}

namespace {

struct Validator {
  void operator()(const ExplicitSamples& s) const {
    if (s.samples.empty()) throw PreconditionError("source: explicit samples are empty");
  }
  void operator()(const LinearComplexity& s) const {
    if (s.coefficients.empty() || s.coefficients.size() != s.roots.size()) {
      throw PreconditionError("source: linear complexity needs L_c >= 1 matching c and r");
    }
    if (s.length < 1) throw PreconditionError("source: M_s must be positive");
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
      if (s.coefficients[i] == Complex{} || s.roots[i] == Complex{}) {
        throw PreconditionError("source: coefficients and roots must be non-zero");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (s.roots[i] == s.roots[j]) throw PreconditionError("source: roots must be distinct");
      }
    }
  }
  void operator()(const FourierGaussianMixture& s) const {
    if (s.grid_length < 1 || s.pulses.empty()) {
      throw PreconditionError("source: Gaussian mixture needs pulses and M >= 1");
    }
    for (const auto& p : s.pulses) {
      if (!(p.amplitude > 0.0)) throw PreconditionError("source: pulse amplitudes must be > 0");
    }
  }
};

}  // namespace

void validate(const SourceSpec& spec) { std::visit(Validator{}, spec); }

std::string source_kind(const SourceSpec& spec) {
  struct Kind {
    std::string operator()(const ExplicitSamples&) const { return "explicit"; }
    std::string operator()(const LinearComplexity&) const { return "linear_complexity"; }
    std::string operator()(const FourierGaussianMixture&) const { return "gaussians"; }
  };
  return std::visit(Kind{}, spec);
}

int source_length(const SourceSpec& spec) {
  struct Length {
    int operator()(const ExplicitSamples& s) const { return static_cast<int>(s.samples.size()); }
    int operator()(const LinearComplexity& s) const { return s.length; }
    int operator()(const FourierGaussianMixture& s) const { return s.grid_length; }
  };
  return std::visit(Length{}, spec);
}

RealizedSource realize_source(const SourceSpec& spec) {
  validate(spec);
  struct Realize {
    RealizedSource operator()(const ExplicitSamples& s) const {
      return {ComplexSequence(s.samples, 0), std::nullopt};
    }
    RealizedSource operator()(const LinearComplexity& s) const {
      std::vector<Complex> samples(static_cast<std::size_t>(s.length));
      for (std::size_t l = 0; l < s.roots.size(); ++l) {
        Complex power{1.0, 0.0};
        for (auto& v : samples) {
          v += s.coefficients[l] * power;
          power *= s.roots[l];
        }
      }
      return {ComplexSequence(std::move(samples), 0), std::nullopt};
    }
    RealizedSource operator()(const FourierGaussianMixture& s) const {
      const int m_len = s.grid_length;
      CVector table = CVector::Zero(m_len);
      for (int k = 0; k < m_len; ++k) {
        double v = 0.0;
        for (const auto& p : s.pulses) {
          const double d = static_cast<double>(k) - p.center;
          v += p.amplitude * std::exp(-p.variance * d * d);
        }
        table(k) = v;
      }
      std::vector<Complex> samples(static_cast<std::size_t>(m_len));
      for (int m = 0; m < m_len; ++m) {
        Complex acc{};
        for (int k = 0; k < m_len; ++k) {
          acc += table(k) * std::polar(1.0, kTwoPi * k * m / m_len);
        }
        samples[static_cast<std::size_t>(m)] = acc / static_cast<double>(m_len);
      }
      return {ComplexSequence(std::move(samples), 0), table};
    }
  };
  return std::visit(Realize{}, spec);
}

FourierGaussianMixture gaussian_mixture_source(int grid_length) {
  const double m = static_cast<double>(grid_length);
  return {{{4.0, m / 2.0, 0.001}, {1.0, 2.0 * m / 3.0, 0.01}}, grid_length};
}

LinearComplexity random_linear_complexity(int complexity, int length, Rng& rng) {
  if (complexity < 1 || length < 1) {
    throw PreconditionError("random_linear_complexity: need L_c >= 1 and M_s >= 1");
  }
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  LinearComplexity s;
  s.length = length;
  for (int l = 0; l < complexity; ++l) {
    Complex c{normal(rng), normal(rng)};
    while (c == Complex{}) c = {normal(rng), normal(rng)};
    s.coefficients.push_back(c);
    s.roots.push_back(std::polar(1.0, angle(rng)));
  }
  return s;
}

ExplicitSamples random_explicit_source(int length, Rng& rng) {
  if (length < 1) throw PreconditionError("random_explicit_source: need M_s >= 1");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ExplicitSamples s;
  for (int m = 0; m < length; ++m) s.samples.emplace_back(normal(rng), normal(rng));
  return s;
}

void ChannelEnsemble::validate() const {
  if (filters.size() < 2) throw PreconditionError("ensemble: need N >= 2 channels");
  cmbd::validate(source);
  for (const auto& f : filters) f.validate();
  if (mode == ConvolutionMode::circular) {
    if (period < 2) throw PreconditionError("ensemble: circular mode needs a period M >= 2");
    for (const auto& f : filters) {
      if (f.sequence().end() > period / 2) {
        throw PreconditionError("ensemble: circular mode needs filter supports in [0, floor(M/2))");
      }
    }
    if (source_length(source) > period) {
      throw PreconditionError("ensemble: circular mode needs source support in [0, M)");
    }
  }
}

std::vector<ComplexSequence> ChannelEnsemble::filter_sequences() const {
  std::vector<ComplexSequence> out;
  out.reserve(filters.size());
  for (const auto& f : filters) out.push_back(f.sequence());
  return out;
}

std::vector<ComplexSequence> ChannelEnsemble::outputs() const {
  validate();
  const ComplexSequence s = realize_source(source).time;
  std::vector<ComplexSequence> out;
  for (const auto& x : filter_sequences()) {
    out.push_back(mode == ConvolutionMode::linear
                      ? linear_convolve(s, x)
                      : circular_convolve(s, x, static_cast<std::size_t>(period)));
  }
  return out;
}

}  // namespace cmbd
