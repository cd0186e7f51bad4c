#include "cmbd/alignment.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "cmbd/errors.hpp"

namespace cmbd {

double ratio_to_db(double ratio) {
  if (!(ratio > 1e-12)) return std::isnan(ratio) ? ratio : kOrbitSentinelDb;
  return 20.0 * std::log10(ratio);
}

namespace {

Complex inner(const ComplexSequence& a, const ComplexSequence& b) {
  // <a, b> = sum conj(a) b
  Complex acc{};
  for (std::ptrdiff_t m = a.offset(); m < a.end(); ++m) acc += std::conj(a[m]) * b[m];
  return acc;
}

double truth_norm(std::span<const ComplexSequence> truth) {
  double acc = 0.0;
  for (const auto& x : truth) acc += x.squared_norm();
  return std::sqrt(acc);
}

}  // namespace

Alignment align_up_to_shift_scale(std::span<const ComplexSequence> truth,
                                  std::span<const ComplexSequence> estimate, ShiftRange range) {
  if (truth.size() != estimate.size() || truth.empty()) {
    throw PreconditionError("align_up_to_shift_scale: channel counts differ");
  }
  const double xnorm = truth_norm(truth);
  if (xnorm == 0.0) throw PreconditionError("align_up_to_shift_scale: zero truth");

  Alignment best;
  double best_ratio = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int m = range.lo; m <= range.hi; ++m) {
    Complex num{};
    double den = 0.0;
    for (std::size_t n = 0; n < truth.size(); ++n) {
      const ComplexSequence shifted = estimate[n].shifted(m);
      num += inner(shifted, truth[n]);
      den += shifted.squared_norm();
    }
    if (den == 0.0) continue;
    const Complex alpha = num / den;
    double residual = 0.0;
    for (std::size_t n = 0; n < truth.size(); ++n) {
      residual += (truth[n] - estimate[n].shifted(m).scaled(alpha)).squared_norm();
    }
    const double ratio = std::sqrt(residual) / xnorm;
    const bool better = ratio < best_ratio ||
                        (ratio == best_ratio && found && std::abs(m) < std::abs(best.shift));
    if (!found || better) {
      best = {alpha, m, 0.0};
      best_ratio = ratio;
      found = true;
    }
  }
  if (!found) {
    // Zero estimate: the best scale is 0 and the error is 0 dB.
    return {Complex{}, 0, 0.0};
  }
  best.error_db = ratio_to_db(best_ratio);
  return best;
}

Alignment align_ensemble(std::span<const ComplexSequence> truth_filters,
                         const ComplexSequence& truth_source,
                         std::span<const ComplexSequence> estimate_filters,
                         const ComplexSequence& estimate_source, ShiftRange range) {
  Alignment a = align_up_to_shift_scale(truth_filters, estimate_filters, range);
  if (truth_source.is_zero()) throw PreconditionError("align_ensemble: zero truth source");
  if (a.alpha == Complex{}) return a;
  const ComplexSequence mapped = estimate_source.shifted(-a.shift).scaled(1.0 / a.alpha);
  const double ratio = (truth_source - mapped).norm() / truth_source.norm();
  a.error_db = std::max(a.error_db, ratio_to_db(ratio));
  return a;
}

}  // namespace cmbd
