#include <gtest/gtest.h>

#include "cmbd/alignment.hpp"
#include "cmbd/errors.hpp"
#include "cmbd/rng.hpp"

using namespace cmbd;

namespace {

std::vector<ComplexSequence> random_filters(Rng& rng, int n, int len) {
  std::normal_distribution<double> g;
  std::vector<ComplexSequence> out;
  for (int i = 0; i < n; ++i) {
    std::vector<Complex> v(static_cast<std::size_t>(len));
    for (auto& x : v) x = {g(rng), g(rng)};
    out.emplace_back(v);
  }
  return out;
}

std::vector<ComplexSequence> transform(const std::vector<ComplexSequence>& xs, Complex c, int shift) {
  std::vector<ComplexSequence> out;
  for (const auto& x : xs) out.push_back(x.scaled(c).shifted(shift));
  return out;
}

}  // namespace

TEST(Alignment, IdenticalEstimateHitsSentinel) {
  Rng rng(1);
  const auto x = random_filters(rng, 3, 6);
  const auto a = align_up_to_shift_scale(x, x, ShiftRange::for_support_bound(6));
  EXPECT_EQ(a.shift, 0);
  EXPECT_NEAR(std::abs(a.alpha - 1.0), 0.0, 1e-12);
  EXPECT_EQ(a.error_db, kOrbitSentinelDb);
}

TEST(Alignment, RecoversScaleAndShift) {
  Rng rng(2);
  const auto x = random_filters(rng, 2, 5);
  const Complex c(0.3, -1.7);
  const auto est = transform(x, c, -2);
  const auto a = align_up_to_shift_scale(x, est, ShiftRange::for_support_bound(8));
  EXPECT_EQ(a.shift, 2);
  EXPECT_NEAR(std::abs(a.alpha - 1.0 / c), 0.0, 1e-12);
  EXPECT_EQ(a.error_db, kOrbitSentinelDb);
}

TEST(Alignment, ShiftOutsideRangeIsNotFound) {
  Rng rng(3);
  const auto x = random_filters(rng, 2, 4);
  const auto a = align_up_to_shift_scale(x, transform(x, 1.0, 6), ShiftRange{-2, 2});
  EXPECT_GT(a.error_db, -20.0);
}

TEST(Alignment, ScaleAndShiftInvariance) {
  Rng rng(4);
  const auto x = random_filters(rng, 3, 6);
  auto noisy = random_filters(rng, 3, 6);
  for (std::size_t i = 0; i < x.size(); ++i) noisy[i] = x[i] + noisy[i].scaled(0.01);
  const auto range = ShiftRange::for_support_bound(12);
  const double base = align_up_to_shift_scale(x, noisy, range).error_db;
  const double moved = align_up_to_shift_scale(x, transform(noisy, Complex(-2.0, 0.5), 3), range).error_db;
  EXPECT_NEAR(base, moved, 1e-9);
  EXPECT_LT(base, -30.0);
}

TEST(Alignment, ErrorIsRelativeInDecibels) {
  const std::vector<ComplexSequence> x = {ComplexSequence({1.0, 0.0, 0.0, 0.0}),
                                          ComplexSequence({0.0, 1.0})};
  const std::vector<ComplexSequence> est = {ComplexSequence({1.0}), ComplexSequence({0.0, 1.0, 0.1})};
  const auto a = align_up_to_shift_scale(x, est, ShiftRange{0, 0});
  const double expected_ratio = std::sqrt(1.0 - 2.0 / 2.01);
  EXPECT_NEAR(a.error_db, 20.0 * std::log10(expected_ratio), 1e-9);
}

TEST(Alignment, RejectsMismatchedOrZeroTruth) {
  const std::vector<ComplexSequence> one = {ComplexSequence({1.0})};
  const std::vector<ComplexSequence> two = {ComplexSequence({1.0}), ComplexSequence({1.0})};
  const std::vector<ComplexSequence> zero = {ComplexSequence{}};
  EXPECT_THROW(align_up_to_shift_scale(one, two, ShiftRange{0, 0}), PreconditionError);
  EXPECT_THROW(align_up_to_shift_scale(zero, one, ShiftRange{0, 0}), PreconditionError);
}

TEST(Alignment, EnsembleAppliesInverseToSource) {
  Rng rng(5);
  const auto x = random_filters(rng, 2, 4);
  const auto s = random_filters(rng, 1, 9)[0];
  const Complex c(2.0, 1.0);
  const auto xe = transform(x, c, 1);
  const auto se = s.scaled(1.0 / c).shifted(-1);
  const auto a = align_ensemble(x, s, xe, se, ShiftRange::for_support_bound(4));
  EXPECT_EQ(a.shift, -1);
  EXPECT_EQ(a.error_db, kOrbitSentinelDb);

  const auto bad_source = s.scaled(2.0 / c).shifted(-1);
  EXPECT_NEAR(align_ensemble(x, s, xe, bad_source, ShiftRange::for_support_bound(4)).error_db, 0.0, 1e-9);
}

TEST(Alignment, RatioToDb) {
  EXPECT_NEAR(ratio_to_db(0.1), -20.0, 1e-12);
  EXPECT_EQ(ratio_to_db(1e-13), kOrbitSentinelDb);
}
