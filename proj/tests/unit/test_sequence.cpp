#include <gtest/gtest.h>

#include <random>

#include "cmbd/convolution.hpp"
#include "cmbd/errors.hpp"
#include "cmbd/rng.hpp"
#include "cmbd/sequence.hpp"
#include "cmbd/spectral.hpp"
#include "oracles.hpp"

using namespace cmbd;

namespace {

ComplexSequence random_sequence(Rng& rng, int length, std::ptrdiff_t offset = 0) {
  std::normal_distribution<double> n;
  std::vector<Complex> v(static_cast<std::size_t>(length));
  for (auto& x : v) x = {n(rng), n(rng)};
  return ComplexSequence(v, offset);
}

oracle::Vec to_vec(const ComplexSequence& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

TEST(ComplexSequence, TrimsLeadingAndTrailingZeros) {
  const ComplexSequence s({0.0, 0.0, 1.0, 0.0, 2.0, 0.0}, 3);
  EXPECT_EQ(s.offset(), 5);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s[5], Complex(1.0));
  EXPECT_EQ(s[6], Complex(0.0));
  EXPECT_EQ(s[7], Complex(2.0));
  EXPECT_EQ(s[100], Complex(0.0));
}

TEST(ComplexSequence, AllZeroBecomesTheZeroSequence) {
  const ComplexSequence s({0.0, 0.0}, -4);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.offset(), 0);
  EXPECT_EQ(s, ComplexSequence{});
}

TEST(ComplexSequence, ShiftMovesSamplesRight) {
  const ComplexSequence x({1.0, 2.0}, 0);
  const ComplexSequence y = x.shifted(3);
  EXPECT_EQ(y.offset(), 3);
  EXPECT_EQ(y[4], Complex(2.0));
  EXPECT_EQ(y.shifted(-3), x);
}

TEST(ComplexSequence, SupportAndNnz) {
  const ComplexSequence x({1.0, 1e-12, 0.0, -2.0}, 2);
  EXPECT_EQ(x.nnz(), 3u);
  EXPECT_EQ(x.nnz(1e-9), 2u);
  EXPECT_EQ(x.support(1e-9), (std::vector<std::ptrdiff_t>{2, 5}));
  EXPECT_TRUE(x.within(2, 6));
  EXPECT_FALSE(x.within(3, 6));
}

TEST(ComplexSequence, DenseWindow) {
  const ComplexSequence x({1.0, 2.0}, 1);
  const CVector d = x.dense(0, 4);
  EXPECT_EQ(d(0), Complex(0.0));
  EXPECT_EQ(d(1), Complex(1.0));
  EXPECT_EQ(d(2), Complex(2.0));
  EXPECT_EQ(d(3), Complex(0.0));
}

TEST(LinearConvolve, DeltaIsIdentity) {
  Rng rng(3);
  const auto x = random_sequence(rng, 7, 2);
  EXPECT_EQ(linear_convolve(ComplexSequence::delta(), x), x);
}

TEST(LinearConvolve, TwoTapExample) {
  const auto y = linear_convolve(ComplexSequence({1.0, 1.0}), ComplexSequence({1.0, -1.0}));
  EXPECT_EQ(y, ComplexSequence({1.0, 0.0, -1.0}));
}

TEST(LinearConvolve, OffsetsAdd) {
  const auto y = linear_convolve(ComplexSequence({1.0}, -2), ComplexSequence({1.0, 2.0}, 5));
  EXPECT_EQ(y.offset(), 3);
}

TEST(LinearConvolve, ZeroInputGivesZero) {
  EXPECT_TRUE(linear_convolve(ComplexSequence{}, ComplexSequence({1.0})).is_zero());
}

TEST(LinearConvolve, FrozenExample) {
  const auto y = linear_convolve(ComplexSequence({{1, 2}, -0.5, {0, 3}, 2.0}),
                                 ComplexSequence({0.25, {0, -1}, 1.5}));
  const std::vector<Complex> expected = {{0.25, 0.5}, {1.875, -1.0}, {1.5, 4.25},
                                         {2.75, 0.0}, {0.0, 2.5},    {3.0, 0.0}};
  ASSERT_EQ(y.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(std::abs(y[static_cast<std::ptrdiff_t>(i)] - expected[i]), 0.0, 1e-14);
  }
}

TEST(LinearConvolve, MatchesDtftProductOnSixteenPoints) {
  Rng rng(11);
  const auto a = random_sequence(rng, 4);
  const auto b = random_sequence(rng, 3);
  const auto y = linear_convolve(a, b);
  for (int k = 0; k < 16; ++k) {
    const double w = oracle::kTwoPi * k / 16.0;
    const auto expected = oracle::dtft(to_vec(a), w) * oracle::dtft(to_vec(b), w);
    EXPECT_NEAR(std::abs(oracle::dtft(to_vec(y), w) - expected), 0.0, 1e-12);
  }
}

TEST(LinearConvolve, ConvolutionTheoremUpToLength64) {
  Rng rng(12);
  std::uniform_int_distribution<int> len(1, 64);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_sequence(rng, len(rng), trial % 3);
    const auto b = random_sequence(rng, len(rng), -(trial % 2));
    const double w0 = 0.37;
    const std::vector<int> ks = {1, 2, 5, 9, 13};
    const CVector lhs = dtft_at(linear_convolve(a, b), w0, ks);
    const CVector rhs = dtft_at(a, w0, ks).cwiseProduct(dtft_at(b, w0, ks));
    EXPECT_LE((lhs - rhs).norm(), 1e-10 * rhs.norm());
  }
}

TEST(CircularConvolve, DeltaIsIdentity) {
  const ComplexSequence x({1.0, -2.0, 0.5}, 1);
  EXPECT_EQ(circular_convolve(ComplexSequence::delta(), x, 8), x);
}

TEST(CircularConvolve, EqualsLinearWithoutWraparound) {
  Rng rng(5);
  const auto a = random_sequence(rng, 3);
  const auto b = random_sequence(rng, 4);
  EXPECT_LT(max_abs_difference(circular_convolve(a, b, 8), linear_convolve(a, b)), 1e-14);
}

TEST(CircularConvolve, WrapsAround) {
  const auto y = circular_convolve(ComplexSequence({0.0, 0.0, 1.0}), ComplexSequence({0.0, 0.0, 1.0}), 3);
  EXPECT_EQ(y, ComplexSequence({0.0, 1.0}));
}

TEST(CircularConvolve, RejectsSupportOutsidePeriod) {
  EXPECT_THROW(circular_convolve(ComplexSequence({1.0}, 8), ComplexSequence({1.0}), 8), PreconditionError);
  EXPECT_THROW(circular_convolve(ComplexSequence({1.0}, -1), ComplexSequence({1.0}), 8), PreconditionError);
}

TEST(CircularConvolve, CrossTermMatchesLinearForHalfSupports) {
  Rng rng(21);
  const int period = 16;
  for (int trial = 0; trial < 10; ++trial) {
    const auto x1 = random_sequence(rng, 8), x2 = random_sequence(rng, 8);
    const auto h1 = random_sequence(rng, 8), h2 = random_sequence(rng, 8);
    const auto circ = circular_convolve(x1, h2, period) - circular_convolve(x2, h1, period);
    const auto lin = linear_convolve(x1, h2) - linear_convolve(x2, h1);
    EXPECT_LT(max_abs_difference(circ, lin), 1e-12);
  }
}

TEST(Dtft, DeltaGivesOnes) {
  const std::vector<int> ks = {-3, 0, 1, 7};
  const CVector v = dtft_at(ComplexSequence::delta(), 0.9, ks);
  for (Eigen::Index i = 0; i < v.size(); ++i) EXPECT_EQ(v(i), Complex(1.0));
}

TEST(Dtft, ShiftedDeltaAtQuarterTurn) {
  const std::vector<int> ks = {1};
  const CVector v = dtft_at(ComplexSequence::delta(1), kPi / 2, ks);
  EXPECT_NEAR(std::abs(v(0) - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(Dtft, FrozenValues) {
  const ComplexSequence x({1.0, {0, 2}, -1.0, 0.5});
  const std::vector<int> ks = {0, 1, 3, -2};
  const CVector v = dtft_at(x, kTwoPi / 7, ks);
  const std::vector<Complex> expected = {{0.5, 2.0},
                                         {2.3356994649411646, 2.0049656463405117},
                                         {1.1330172093982263, -3.0712331743637797},
                                         {0.2628579444681386, -0.4020738700290856}};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    EXPECT_NEAR(std::abs(v(static_cast<Eigen::Index>(i)) - expected[i]), 0.0, 1e-13);
  }
}

TEST(Dtft, RejectsOmegaOutsideOpenInterval) {
  const std::vector<int> ks = {1};
  EXPECT_THROW(dtft_at(ComplexSequence::delta(), 0.0, ks), PreconditionError);
  EXPECT_THROW(dtft_at(ComplexSequence::delta(), kTwoPi, ks), PreconditionError);
}

TEST(Dtft, AgreesWithZEvalOnUnitCircle) {
  Rng rng(8);
  const auto x = random_sequence(rng, 12, -3);
  const std::vector<int> ks = {0, 1, 2, 5, 11};
  const double w0 = kTwoPi / 23;
  std::vector<Complex> pts;
  for (const int k : ks) pts.push_back(std::polar(1.0, k * w0));
  const CVector a = dtft_at(x, w0, ks);
  const CVector b = z_eval(x, pts);
  EXPECT_LE((a - b).norm(), 1e-12 * a.norm());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    EXPECT_NEAR(std::abs(a(static_cast<Eigen::Index>(i)) - oracle::dtft(to_vec(x), ks[i] * w0, x.offset())), 0.0,
                1e-11);
  }
}

TEST(ZEval, SmallExamples) {
  const std::vector<Complex> one = {1.0}, minus_one = {-1.0};
  EXPECT_NEAR(std::abs(z_eval(ComplexSequence({1.0, 1.0}), one)(0) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z_eval(ComplexSequence({1.0, 0.0, -1.0}), minus_one)(0)), 0.0, 1e-15);
}

TEST(ZEval, ZeroPointNeedsNoNegativePowers) {
  const std::vector<Complex> zero = {0.0};
  EXPECT_THROW(z_eval(ComplexSequence({1.0, 1.0}), zero), DomainError);
  EXPECT_EQ(z_eval(ComplexSequence({3.0}), zero)(0), Complex(3.0));
}

TEST(ZEval, OffPointsMatchDirectSum) {
  Rng rng(9);
  const auto x = random_sequence(rng, 6, -2);
  const std::vector<Complex> pts = {{0.5, 0.2}, {2.0, -1.0}, {-0.3, 0.9}};
  const CVector v = z_eval(x, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Complex acc{};
    for (std::ptrdiff_t m = x.offset(); m < x.end(); ++m) acc += x[m] * std::pow(pts[i], -static_cast<double>(m));
    EXPECT_NEAR(std::abs(v(static_cast<Eigen::Index>(i)) - acc), 0.0, 1e-11 * std::max(1.0, std::abs(acc)));
  }
}
