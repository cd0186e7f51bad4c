#include "cmbd/spectral.hpp"

#include "cmbd/errors.hpp"

namespace cmbd {

CVector dtft_at(const ComplexSequence& x, double omega0, std::span<const int> ks) {
  if (!(omega0 > 0.0 && omega0 < kTwoPi)) {
    throw PreconditionError("dtft_at: omega0 must lie in (0, 2*pi)");
  }
  CVector out = CVector::Zero(static_cast<Eigen::Index>(ks.size()));
  const auto values = x.values();
  for (std::size_t r = 0; r < ks.size(); ++r) {
    Complex acc{};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto m = static_cast<double>(x.offset() + static_cast<std::ptrdiff_t>(i));
      acc += values[i] * std::polar(1.0, -static_cast<double>(ks[r]) * omega0 * m);
    }
    out(static_cast<Eigen::Index>(r)) = acc;
  }
  return out;
}

CVector z_eval(const ComplexSequence& x, std::span<const Complex> points) {
  CVector out = CVector::Zero(static_cast<Eigen::Index>(points.size()));
  const auto values = x.values();
  for (std::size_t r = 0; r < points.size(); ++r) {
    const Complex z = points[r];
    if (z == Complex{}) {
      if (x.end() > 1) throw DomainError("z_eval: X(z) has a pole at z = 0");
      out(static_cast<Eigen::Index>(r)) = x[0];
      continue;
    }
    // Horner in w = 1/z over the stored window, then w^offset.
    const Complex w = 1.0 / z;
    Complex acc{};
    for (std::size_t i = values.size(); i-- > 0;) acc = acc * w + values[i];
    out(static_cast<Eigen::Index>(r)) = acc * ipow(w, x.offset());
  }
  return out;
}

}  // namespace cmbd
