#include "cmbd/sequence.hpp"

#include <algorithm>
#include <cmath>

namespace cmbd {

ComplexSequence::ComplexSequence(std::vector<Complex> values, std::ptrdiff_t offset)
    : values_(std::move(values)), offset_(offset) {
  trim();
}

ComplexSequence ComplexSequence::delta(std::ptrdiff_t at, Complex amplitude) {
  return ComplexSequence({amplitude}, at);
}

ComplexSequence ComplexSequence::from_dense(const CVector& values, std::ptrdiff_t offset) {
  return ComplexSequence(std::vector<Complex>(values.data(), values.data() + values.size()),
                         offset);
}

void ComplexSequence::trim() {
  const auto nonzero = [](const Complex& v) { return v != Complex{}; };
  const auto first = std::find_if(values_.begin(), values_.end(), nonzero);
  if (first == values_.end()) {
    values_.clear();
    offset_ = 0;
    return;
  }
  const auto last = std::find_if(values_.rbegin(), values_.rend(), nonzero).base();
  offset_ += first - values_.begin();
  values_.erase(last, values_.end());
  values_.erase(values_.begin(), first);
}

Complex ComplexSequence::operator[](std::ptrdiff_t m) const noexcept {
  if (m < offset_ || m >= end()) return {};
  return values_[static_cast<std::size_t>(m - offset_)];
}

CVector ComplexSequence::dense(std::ptrdiff_t begin, std::size_t length) const {
  CVector out = CVector::Zero(static_cast<Eigen::Index>(length));
  for (std::size_t i = 0; i < length; ++i) {
    out(static_cast<Eigen::Index>(i)) = (*this)[begin + static_cast<std::ptrdiff_t>(i)];
  }
  return out;
}

ComplexSequence ComplexSequence::shifted(std::ptrdiff_t m) const {
  if (is_zero()) return {};
  ComplexSequence out = *this;
  out.offset_ += m;
  return out;
}

ComplexSequence ComplexSequence::scaled(Complex factor) const {
  std::vector<Complex> v = values_;
  for (auto& x : v) x *= factor;
  return ComplexSequence(std::move(v), offset_);
}

double ComplexSequence::squared_norm() const noexcept {
  double acc = 0.0;
  for (const auto& v : values_) acc += std::norm(v);
  return acc;
}

double ComplexSequence::norm() const noexcept { return std::sqrt(squared_norm()); }

std::size_t ComplexSequence::nnz(double tolerance) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      values_.begin(), values_.end(), [&](const Complex& v) { return std::abs(v) > tolerance; }));
}

std::vector<std::ptrdiff_t> ComplexSequence::support(double tolerance) const {
  std::vector<std::ptrdiff_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::abs(values_[i]) > tolerance) out.push_back(offset_ + static_cast<std::ptrdiff_t>(i));
  }
  return out;
}

bool ComplexSequence::within(std::ptrdiff_t begin, std::ptrdiff_t end_index) const noexcept {
  return is_zero() || (offset_ >= begin && end() <= end_index);
}

namespace {

ComplexSequence combine(const ComplexSequence& a, const ComplexSequence& b, double sign) {
  if (a.is_zero()) return b.scaled(sign);
  if (b.is_zero()) return a;
  const std::ptrdiff_t lo = std::min(a.offset(), b.offset());
  const std::ptrdiff_t hi = std::max(a.end(), b.end());
  std::vector<Complex> v(static_cast<std::size_t>(hi - lo));
  for (std::ptrdiff_t m = lo; m < hi; ++m) {
    v[static_cast<std::size_t>(m - lo)] = a[m] + sign * b[m];
  }
  return ComplexSequence(std::move(v), lo);
}

}  // namespace

ComplexSequence operator+(const ComplexSequence& a, const ComplexSequence& b) {
  return combine(a, b, 1.0);
}

ComplexSequence operator-(const ComplexSequence& a, const ComplexSequence& b) {
  return combine(a, b, -1.0);
}

double max_abs_difference(const ComplexSequence& a, const ComplexSequence& b) {
  const ComplexSequence d = a - b;
  double worst = 0.0;
  for (const auto& v : d.values()) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace cmbd
