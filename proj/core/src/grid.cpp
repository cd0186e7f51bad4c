#include "cmbd/grid.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cmbd/errors.hpp"
#include "cmbd/spectral.hpp"

namespace cmbd {

FrequencyGrid FrequencyGrid::fourier(double omega0, int alias_bound,
                                     std::vector<std::vector<int>> channel_sets) {
  FrequencyGrid g;
  g.kind = GridKind::fourier;
  g.omega0 = omega0;
  g.z0 = std::polar(1.0, omega0);
  g.alias_bound = alias_bound;
  g.channel_sets = std::move(channel_sets);
  return g;
}

FrequencyGrid FrequencyGrid::z_domain(Complex z0, int alias_bound,
                                      std::vector<std::vector<int>> channel_sets) {
  FrequencyGrid g;
  g.kind = GridKind::z_domain;
  g.z0 = z0;
  g.alias_bound = alias_bound;
  g.channel_sets = std::move(channel_sets);
  return g;
}

Complex FrequencyGrid::base() const { return kind == GridKind::fourier ? std::polar(1.0, omega0) : z0; }

Complex FrequencyGrid::point(int k) const {
  return kind == GridKind::fourier ? unit_point(k, omega0) : ipow(z0, k);
}

std::vector<Complex> FrequencyGrid::points(std::span<const int> ks) const {
  std::vector<Complex> out;
  out.reserve(ks.size());
  for (const int k : ks) out.push_back(point(k));
  return out;
}

std::vector<Complex> FrequencyGrid::channel_points(std::size_t channel) const {
  return points(channel_sets.at(channel));
}

std::vector<int> FrequencyGrid::union_indices() const {
  std::set<int> all;
  for (const auto& s : channel_sets) all.insert(s.begin(), s.end());
  return {all.begin(), all.end()};
}

VandermondeOperator FrequencyGrid::sensing_operator(std::span<const int> ks, int columns) const {
  std::vector<Complex> generators;
  generators.reserve(ks.size());
  for (const int k : ks) {
    generators.push_back(kind == GridKind::fourier ? unit_point(-k, omega0) : ipow(z0, -k));
  }
  return VandermondeOperator(std::move(generators), columns);
}

void FrequencyGrid::validate() const {
  if (alias_bound < 1) throw PreconditionError("grid: alias bound must be >= 1");
  if (kind == GridKind::fourier && !(omega0 > 0.0 && omega0 < kTwoPi)) {
    throw PreconditionError("grid: omega0 must lie in (0, 2*pi)");
  }
  if (kind == GridKind::z_domain && (z0 == Complex{} || std::abs(z0 - 1.0) < 1e-12)) {
    throw PreconditionError("grid: z0 must be non-zero and different from 1");
  }
  // base^m, m in [0, M-bar), pairwise distinct <=> base^d != 1 for 0 < d < M-bar.
  const Complex b = base();
  for (int d = 1; d < alias_bound; ++d) {
    const Complex p = kind == GridKind::fourier ? unit_point(d, omega0) : ipow(b, d);
    if (std::abs(p - 1.0) <= 1e-9) {
      throw PreconditionError("grid: base^m aliases for m in [0, " + std::to_string(alias_bound) +
                              ")");
    }
  }
  if (channel_sets.empty()) throw PreconditionError("grid: no channels");
  for (const auto& s : channel_sets) {
    if (s.size() > static_cast<std::size_t>(alias_bound)) {
      throw PreconditionError("grid: |K_n| = " + std::to_string(s.size()) + " exceeds M-bar = " +
                              std::to_string(alias_bound));
    }
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw PreconditionError("grid: duplicate index in K_n");
    }
  }
}

FrequencyGrid consecutive_universal_grid(int count, int alias_bound, std::size_t channels) {
  if (count < 1 || alias_bound < 1) {
    throw PreconditionError("consecutive_universal_grid: K and M-bar must be positive");
  }
  if (count > alias_bound) {
    throw PreconditionError("consecutive_universal_grid: K = " + std::to_string(count) +
                            " exceeds M-bar = " + std::to_string(alias_bound));
  }
  std::vector<int> ks(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ks[static_cast<std::size_t>(i)] = i + 1;
  FrequencyGrid g = FrequencyGrid::fourier(kTwoPi / alias_bound, alias_bound,
                                           std::vector<std::vector<int>>(channels, ks));
  g.certified = true;
  return g;
}

VandermondeOperator z_grid(Complex z0, std::span<const int> pks, int columns) {
  if (std::abs(z0 - 1.0) < 1e-12 || z0 == Complex{}) {
    throw PreconditionError("z_grid: z0 must be non-zero and different from 1");
  }
  std::vector<Complex> generators;
  for (const int p : pks) generators.push_back(ipow(z0, -p));
  return VandermondeOperator(std::move(generators), columns);
}

SparkCertificate certify_grid(FrequencyGrid& grid, const SparkOptions& options) {
  grid.validate();
  SparkCertificate verdict;
  verdict.status = SparkStatus::full_spark;
  for (const auto& ks : grid.channel_sets) {
    SparkCertificate c = certify_full_spark(grid.sensing_operator(ks, grid.alias_bound), options);
    verdict.submatrices_checked += c.submatrices_checked;
    verdict.submatrices_total = std::max(verdict.submatrices_total, c.submatrices_total);
    if (c.status != SparkStatus::full_spark) {
      verdict.status = c.status;
      verdict.witness = c.witness;
      break;
    }
  }
  grid.certified = verdict.full_spark();
  return verdict;
}

}  // namespace cmbd
