#include "cmbd/recovery/bdc.hpp"

#include <algorithm>

#include "cmbd/errors.hpp"
#include "cmbd/recovery/cross_relation.hpp"
#include "cmbd/recovery/omp.hpp"

namespace cmbd {

namespace {

bool has_vanishing_entry(const CVector& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(std::abs(v(i)) > 1e-14 * peak)) return true;
  }
  return false;
}

}  // namespace

RecoveryResult bdc(const MeasurementSet& measurements, int sparsity, int support_bound,
                   const BdcOptions& options) {
  measurements.validate();
  const std::size_t n_channels = measurements.channels.size();
  if (n_channels < 2) throw PreconditionError("bdc: needs at least two channels");
  const auto& ks = measurements.grid.channel_sets[0];
  for (const auto& set : measurements.grid.channel_sets) {
    if (set != ks) throw PreconditionError("bdc: all channels must share one index set");
  }
  const auto k_count = static_cast<Eigen::Index>(ks.size());
  CMatrix y(k_count, static_cast<Eigen::Index>(n_channels));
  for (std::size_t n = 0; n < n_channels; ++n) y.col(static_cast<Eigen::Index>(n)) = measurements.channels[n];
  const CMatrix abar = measurements.grid.sensing_operator(ks, support_bound).matrix();

  CVector s = options.initial_spectrum.value_or(CVector::Ones(k_count));
  if (s.size() != k_count) throw PreconditionError("bdc: initial spectrum length differs from |K|");

  RecoveryResult out;
  CMatrix x = CMatrix::Zero(support_bound, y.cols());
  CMatrix x_prev = x;
  std::vector<std::vector<int>> supports(n_channels);
  bool degenerate = false;
  int iter = 0;
  for (iter = 1; iter <= options.max_iterations; ++iter) {
    if (has_vanishing_entry(s)) {
      degenerate = true;
      --iter;
      break;
    }
    const CVector s_inv = s.cwiseInverse();
    for (Eigen::Index n = 0; n < y.cols(); ++n) {
      const OmpResult r = omp(abar, s_inv.asDiagonal() * y.col(n), sparsity);
      x.col(n) = r.coefficients;
      supports[static_cast<std::size_t>(n)] = r.support;
    }
    const CMatrix ax = abar * x;
    const Eigen::VectorXd den = ax.cwiseAbs2().rowwise().sum();
    if (has_vanishing_entry(den.cast<Complex>())) {
      degenerate = true;
      break;
    }
    s = (ax.conjugate().cwiseProduct(y)).rowwise().sum().cwiseQuotient(den.cast<Complex>());
    if (iter > 1 && (x - x_prev).norm() <= options.tolerance) {
      out.converged = true;
      break;
    }
    x_prev = x;
  }
  out.iterations = std::min(iter, options.max_iterations);

  for (Eigen::Index n = 0; n < x.cols(); ++n) out.filters.push_back(ComplexSequence::from_dense(x.col(n)));

  if (options.refine_support && !degenerate && n_channels == 2) {
    const CrossRelationSystem sys = build_cross_relation(measurements, support_bound, 0, 1);
    std::vector<int> cols = supports[0];
    for (const int c : supports[1]) cols.push_back(support_bound + c);
    if (!cols.empty()) {
      out.filters = split_stacked(null_vector_on_support(sys.b, cols), support_bound);
      const std::size_t both[] = {0, 1};
      const SpectrumSamples refit = estimate_source_spectrum(measurements, out.filters, both);
      s = refit.values;
    }
  }

  out.source_spectrum = SpectrumSamples{ks, s};
  if (degenerate) {
    out.converged = false;
    out.status = RecoveryStatus::degenerate;
  } else if (!out.converged) {
    out.status = RecoveryStatus::not_converged;
  }
  canonicalize(out, measurements.grid);
  return out;
}

}  // namespace cmbd
