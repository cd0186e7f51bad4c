#include "cmbd/sos.hpp"

#include <algorithm>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "cmbd/convolution.hpp"
#include "cmbd/errors.hpp"
#include "cmbd/spectral.hpp"

namespace cmbd {

namespace {

void check_kernel(const SosKernel& kernel) {
  if (kernel.ks.empty()) throw PreconditionError("sos: K must be non-empty");
  if (kernel.length < 1) throw PreconditionError("sos: M_h must be positive");
  if (!(kernel.omega0 > 0.0 && kernel.omega0 < kTwoPi)) {
    throw PreconditionError("sos: omega0 must lie in (0, 2*pi)");
  }
}

}  // namespace

ComplexSequence sos_impulse(const SosKernel& kernel) {
  check_kernel(kernel);
  std::vector<Complex> h(static_cast<std::size_t>(kernel.length));
  for (int m = 0; m < kernel.length; ++m) {
    Complex acc{};
    for (const int k : kernel.ks) acc += unit_point(k * m, kernel.omega0);
    h[static_cast<std::size_t>(m)] = acc;
  }
  return ComplexSequence(std::move(h), 0);
}

CVector acquire_via_kernel(const ComplexSequence& y, int signal_length, const SosKernel& kernel,
                           const KernelAcquisitionOptions& options) {
  check_kernel(kernel);
  const int kcount = static_cast<int>(kernel.ks.size());
  if (signal_length < 1 || !y.within(0, signal_length)) {
    throw PreconditionError("acquire_via_kernel: y must be supported in [0, M)");
  }
  if (kernel.length < signal_length + kcount - 1) {
    throw PreconditionError("acquire_via_kernel: need M_h >= M + |K| - 1 (M_h = " +
                            std::to_string(kernel.length) + ", M = " +
                            std::to_string(signal_length) + ", |K| = " + std::to_string(kcount) +
                            ")");
  }
  // Distinct e^{j k omega0} makes the consecutive-row system full column rank.
  for (int a = 0; a < kcount; ++a) {
    for (int b = 0; b < a; ++b) {
      if (std::abs(unit_point(kernel.ks[a], kernel.omega0) -
                   unit_point(kernel.ks[b], kernel.omega0)) <= 1e-12) {
        throw PreconditionError("acquire_via_kernel: frequencies k omega0 alias");
      }
    }
  }

  std::vector<int> rows;
  if (options.sample_indices) {
    rows = *options.sample_indices;
    for (const int m : rows) {
      if (m < signal_length - 1 || m > kernel.length - 1) {
        throw PreconditionError("acquire_via_kernel: sample index outside [M-1, M_h-1]");
      }
    }
    if (static_cast<int>(rows.size()) < kcount) {
      throw PreconditionError("acquire_via_kernel: need at least |K| samples");
    }
  } else {
    for (int m = signal_length - 1; m <= kernel.length - 1; ++m) rows.push_back(m);
  }

  const ComplexSequence filtered = linear_convolve(y, sos_impulse(kernel));
  const auto nrows = static_cast<Eigen::Index>(rows.size());
  CMatrix v(nrows, kcount);
  CVector rhs(nrows);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    const int m = rows[static_cast<std::size_t>(r)];
    rhs(r) = filtered[m];
    for (int c = 0; c < kcount; ++c) v(r, c) = unit_point(kernel.ks[c] * m, kernel.omega0);
  }
  Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond <= options.max_condition)) {
    throw ConditioningError("acquire_via_kernel: Vandermonde system condition number " +
                                std::to_string(cond) + " exceeds limit",
                            cond);
  }
  return svd.solve(rhs);
}

}  // namespace cmbd
