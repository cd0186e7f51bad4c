#include "cmbd/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cmbd/errors.hpp"
#include "cmbd/spectral.hpp"

namespace cmbd {

void MeasurementSet::validate() const {
  grid.validate();
  if (channels.size() != grid.channels()) {
    throw PreconditionError("measurements: channel count does not match the grid");
  }
  for (std::size_t n = 0; n < channels.size(); ++n) {
    if (static_cast<std::size_t>(channels[n].size()) != grid.channel_sets[n].size()) {
      throw PreconditionError("measurements: channel " + std::to_string(n) +
                              " length differs from |K_n|");
    }
  }
}

CMatrix MeasurementSet::pair_matrix(std::size_t a, std::size_t b) const {
  if (a >= channels.size() || b >= channels.size()) {
    throw PreconditionError("measurements: channel index out of range");
  }
  if (grid.channel_sets[a] != grid.channel_sets[b]) {
    throw PreconditionError("measurements: channels " + std::to_string(a) + " and " +
                            std::to_string(b) + " use different index sets");
  }
  CMatrix y(channels[a].size(), 2);
  y.col(0) = channels[a];
  y.col(1) = channels[b];
  return y;
}

namespace {

bool is_matching_dft_grid(const FrequencyGrid& grid, int table_length) {
  return grid.kind == GridKind::fourier &&
         std::abs(grid.omega0 - kTwoPi / table_length) <= 1e-12 * kTwoPi;
}

int positive_mod(int k, int m) { return ((k % m) + m) % m; }

}  // namespace

CVector source_on_grid(const RealizedSource& source, const FrequencyGrid& grid,
                       std::span<const int> ks) {
  if (source.dft_table && is_matching_dft_grid(grid, static_cast<int>(source.dft_table->size()))) {
    const int m = static_cast<int>(source.dft_table->size());
    CVector out(static_cast<Eigen::Index>(ks.size()));
    for (std::size_t i = 0; i < ks.size(); ++i) {
      out(static_cast<Eigen::Index>(i)) = (*source.dft_table)(positive_mod(ks[i], m));
    }
    return out;
  }
  const auto pts = grid.points(ks);
  return z_eval(source.time, pts);
}

MeasureOutcome measure_fourier(const ChannelEnsemble& ensemble, const FrequencyGrid& grid,
                               double nonvanishing_tolerance) {
  ensemble.validate();
  grid.validate();
  if (grid.channels() != ensemble.filters.size()) {
    throw PreconditionError("measure_fourier: grid has " + std::to_string(grid.channels()) +
                            " channels, ensemble has " + std::to_string(ensemble.filters.size()));
  }
  int max_mx = 0;
  for (const auto& f : ensemble.filters) max_mx = std::max(max_mx, f.support_bound);
  const int ms = source_length(ensemble.source);
  const int required = std::max(2 * max_mx - 1, ms);
  if (ensemble.mode == ConvolutionMode::circular) {
    if (!is_matching_dft_grid(grid, ensemble.period)) {
      throw PreconditionError("measure_fourier: circular mode needs omega0 = 2 pi / M");
    }
  } else if (grid.alias_bound < required) {
    throw PreconditionError("measure_fourier: M-bar = " + std::to_string(grid.alias_bound) +
                            " is below max{2 M_x - 1, M_s} = " + std::to_string(required));
  }

  const RealizedSource source = realize_source(ensemble.source);
  const auto filters = ensemble.filter_sequences();

  MeasureOutcome out;
  out.measurements.grid = grid;
  out.measurements.mode = ensemble.mode;
  double smax = 0.0;
  double smin = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, double>> magnitudes;
  for (std::size_t n = 0; n < filters.size(); ++n) {
    const auto& ks = grid.channel_sets[n];
    const CVector s = source_on_grid(source, grid, ks);
    const CVector x = z_eval(filters[n], grid.points(ks));
    out.measurements.channels.push_back(s.cwiseProduct(x));
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double mag = std::abs(s(static_cast<Eigen::Index>(i)));
      smax = std::max(smax, mag);
      smin = std::min(smin, mag);
      magnitudes.emplace_back(ks[i], mag);
    }
  }
  out.min_source_ratio = smax > 0.0 ? smin / smax : 0.0;
  for (const auto& [k, mag] : magnitudes) {
    if (!(mag > nonvanishing_tolerance * smax)) out.vanishing_indices.push_back(k);
  }
  std::sort(out.vanishing_indices.begin(), out.vanishing_indices.end());
  out.vanishing_indices.erase(
      std::unique(out.vanishing_indices.begin(), out.vanishing_indices.end()),
      out.vanishing_indices.end());
  out.source_nonvanishing = out.vanishing_indices.empty();
  return out;
}

MeasurementSet measure_outputs(std::span<const ComplexSequence> outputs, const FrequencyGrid& grid,
                               ConvolutionMode mode) {
  grid.validate();
  if (outputs.size() != grid.channels()) {
    throw PreconditionError("measure_outputs: channel count does not match the grid");
  }
  MeasurementSet out;
  out.grid = grid;
  out.mode = mode;
  for (std::size_t n = 0; n < outputs.size(); ++n) {
    out.channels.push_back(z_eval(outputs[n], grid.channel_points(n)));
  }
  return out;
}

}  // namespace cmbd
