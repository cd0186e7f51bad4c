#include "cmbd/recovery/result.hpp"

#include <algorithm>
#include <map>

#include "cmbd/errors.hpp"
#include "cmbd/spectral.hpp"

namespace cmbd {

bool SpectrumSamples::contains(int k) const {
  return std::find(ks.begin(), ks.end(), k) != ks.end();
}

Complex SpectrumSamples::at(int k) const {
  const auto it = std::find(ks.begin(), ks.end(), k);
  if (it == ks.end()) {
    throw PreconditionError("spectrum: index " + std::to_string(k) + " is not sampled");
  }
  return values(static_cast<Eigen::Index>(it - ks.begin()));
}

CVector SpectrumSamples::on(std::span<const int> indices) const {
  CVector out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) out(static_cast<Eigen::Index>(i)) = at(indices[i]);
  return out;
}

std::string to_string(RecoveryStatus status) {
  switch (status) {
    case RecoveryStatus::ok: return "ok";
    case RecoveryStatus::not_converged: return "not_converged";
    case RecoveryStatus::degenerate: return "degenerate";
    case RecoveryStatus::non_unique: return "non_unique";
    case RecoveryStatus::not_coprime: return "not_coprime";
    case RecoveryStatus::alignment_failure: return "alignment_failure";
  }
  return "unknown";
}

std::vector<ComplexSequence> split_stacked(const CVector& gamma, int support_bound) {
  if (gamma.size() != 2 * support_bound) {
    throw PreconditionError("split_stacked: vector length must be 2 M_x");
  }
  return {ComplexSequence::from_dense(gamma.head(support_bound)),
          ComplexSequence::from_dense(gamma.tail(support_bound))};
}

CVector stack_filters(std::span<const ComplexSequence> filters, int support_bound) {
  CVector out(static_cast<Eigen::Index>(filters.size()) * support_bound);
  for (std::size_t n = 0; n < filters.size(); ++n) {
    out.segment(static_cast<Eigen::Index>(n) * support_bound, support_bound) =
        filters[n].dense(0, static_cast<std::size_t>(support_bound));
  }
  return out;
}

void canonicalize(RecoveryResult& result, const FrequencyGrid& grid, double relative_threshold) {
  if (result.filters.empty() || result.filters[0].is_zero()) return;
  const ComplexSequence& lead = result.filters[0];
  double peak = 0.0;
  for (const Complex& v : lead.values()) peak = std::max(peak, std::abs(v));
  std::ptrdiff_t first = lead.offset();
  for (std::ptrdiff_t m = lead.offset(); m < lead.end(); ++m) {
    if (std::abs(lead[m]) > relative_threshold * peak) {
      first = m;
      break;
    }
  }
  const Complex a = lead[first];
  for (auto& f : result.filters) f = f.shifted(-first).scaled(1.0 / a);
  if (result.source_spectrum) {
    auto& spec = *result.source_spectrum;
    for (std::size_t i = 0; i < spec.ks.size(); ++i) {
      const Complex z = grid.point(spec.ks[i]);
      spec.values(static_cast<Eigen::Index>(i)) *= a * ipow(z, -static_cast<long long>(first));
    }
  }
  if (result.source_time) *result.source_time = result.source_time->shifted(first).scaled(a);
}

SpectrumSamples estimate_source_spectrum(const MeasurementSet& measurements,
                                         std::span<const ComplexSequence> filters,
                                         std::span<const std::size_t> channels) {
  std::map<int, std::pair<Complex, double>> acc;
  for (const std::size_t n : channels) {
    if (n >= measurements.channels.size() || n >= filters.size()) {
      throw PreconditionError("estimate_source_spectrum: channel index out of range");
    }
    const auto& ks = measurements.grid.channel_sets[n];
    const CVector x = z_eval(filters[n], measurements.grid.points(ks));
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      auto& [num, den] = acc[ks[i]];
      num += std::conj(x(ii)) * measurements.channels[n](ii);
      den += std::norm(x(ii));
    }
  }
  SpectrumSamples out;
  out.values.resize(static_cast<Eigen::Index>(acc.size()));
  Eigen::Index i = 0;
  for (const auto& [k, nd] : acc) {
    out.ks.push_back(k);
    out.values(i++) = nd.second > 0.0 ? nd.first / nd.second : Complex{};
  }
  return out;
}

}  // namespace cmbd
