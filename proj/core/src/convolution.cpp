#include "cmbd/convolution.hpp"

#include <string>

#include "cmbd/errors.hpp"

namespace cmbd {

ComplexSequence linear_convolve(const ComplexSequence& a, const ComplexSequence& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<Complex> out(av.size() + bv.size() - 1);
  for (std::size_t i = 0; i < av.size(); ++i) {
    for (std::size_t j = 0; j < bv.size(); ++j) out[i + j] += av[i] * bv[j];
  }
  return ComplexSequence(std::move(out), a.offset() + b.offset());
}

ComplexSequence circular_convolve(const ComplexSequence& a, const ComplexSequence& b,
                                  std::size_t period) {
  const auto p = static_cast<std::ptrdiff_t>(period);
  if (period == 0 || !a.within(0, p) || !b.within(0, p)) {
    throw PreconditionError("circular_convolve: supports must lie in [0, " +
                            std::to_string(period) + ")");
  }
  std::vector<Complex> out(period);
  for (std::ptrdiff_t i = a.offset(); i < a.end(); ++i) {
    for (std::ptrdiff_t j = b.offset(); j < b.end(); ++j) {
      out[static_cast<std::size_t>((i + j) % p)] += a[i] * b[j];
    }
  }
  return ComplexSequence(std::move(out), 0);
}

}  // namespace cmbd
