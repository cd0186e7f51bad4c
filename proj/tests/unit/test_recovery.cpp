#include <gtest/gtest.h>

#include <numeric>

#include "cmbd/alignment.hpp"
#include "cmbd/errors.hpp"
#include "cmbd/recovery/bdc.hpp"
#include "cmbd/recovery/cross_relation.hpp"
#include "cmbd/recovery/nonsparse.hpp"
#include "cmbd/recovery/omp.hpp"
#include "cmbd/recovery/tpi.hpp"
#include "cmbd/spectral.hpp"
#include "instances.hpp"

using namespace cmbd;
using testing_support::sparse_instance;

namespace {

double filter_error_db(const std::vector<ComplexSequence>& truth, const std::vector<ComplexSequence>& est,
                       int support_bound) {
  return align_up_to_shift_scale(truth, est, ShiftRange::for_support_bound(support_bound)).error_db;
}

SpectrumSamples true_spectrum(const testing_support::Instance& inst) {
  const auto& ks = inst.measurements.grid.channel_sets[0];
  return {ks, dtft_at(inst.source.time, inst.measurements.grid.omega0, ks)};
}

}  // namespace

TEST(CrossRelation, TruthIsInTheNullSpace) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = sparse_instance(rng, 2, 3, 12, 12, 20);
    const auto sys = build_cross_relation(inst.measurements, 12);
    EXPECT_EQ(sys.b.rows(), 12);
    EXPECT_EQ(sys.b.cols(), 24);
    const CVector gamma = stack_filters(inst.ensemble.filter_sequences(), 12);
    EXPECT_LE((sys.b * gamma).norm(), 1e-10 * spectral_norm(sys.b) * gamma.norm());
  }
}

TEST(CrossRelation, SpectralNormIsLargestSingularValue) {
  Rng rng(2);
  const CMatrix m = CMatrix::Random(7, 5);
  Eigen::JacobiSVD<CMatrix> svd(m);
  EXPECT_NEAR(spectral_norm(m), svd.singularValues()(0), 1e-12);
}

TEST(CrossRelation, NullVectorOnTrueSupportRecoversFilters) {
  Rng rng(3);
  const auto inst = sparse_instance(rng, 2, 2, 8, 6, 10);
  const auto sys = build_cross_relation(inst.measurements, 8);
  std::vector<int> cols;
  for (int n = 0; n < 2; ++n) {
    for (const int i : inst.ensemble.filters[static_cast<std::size_t>(n)].support) cols.push_back(i + 8 * n);
  }
  std::sort(cols.begin(), cols.end());
  const CVector gamma = null_vector_on_support(sys.b, cols);
  EXPECT_NEAR(gamma.norm(), 1.0, 1e-12);
  EXPECT_LT(filter_error_db(inst.ensemble.filter_sequences(), split_stacked(gamma, 8), 8), -150.0);
}

TEST(CrossRelation, MismatchedSetsAreRejected) {
  MeasurementSet m{FrequencyGrid::fourier(kTwoPi / 8, 8, {{1, 2}, {1, 3}}), ConvolutionMode::linear,
                   {CVector::Ones(2), CVector::Ones(2)}};
  EXPECT_THROW(build_cross_relation(m, 4), PreconditionError);
}

TEST(Result, StackAndSplitRoundTrip) {
  const std::vector<ComplexSequence> xs = {ComplexSequence({1.0, 0.0, 2.0}), ComplexSequence({3.0}, 2)};
  const CVector g = stack_filters(xs, 4);
  EXPECT_EQ(g.size(), 8);
  EXPECT_EQ(g(6), Complex(3.0));
  EXPECT_EQ(split_stacked(g, 4), xs);
}

TEST(Result, CanonicalizeNormalisesFirstTap) {
  const auto grid = FrequencyGrid::fourier(kTwoPi / 8, 8, {{1, 2}, {1, 2}});
  RecoveryResult r;
  r.filters = {ComplexSequence({Complex(1e-12), Complex(0.0, 2.0), 1.0}, 1), ComplexSequence({4.0}, 3)};
  CVector s(2);
  s << 1.0, 2.0;
  r.source_spectrum = SpectrumSamples{{1, 2}, s};
  const std::vector<int> ks = {1, 2};
  const CVector before = dtft_at(r.filters[1], grid.omega0, ks).cwiseProduct(s);
  canonicalize(r, grid);
  EXPECT_NEAR(std::abs(r.filters[0][0] - 1.0), 0.0, 1e-15);
  EXPECT_EQ(r.filters[0].offset(), -1);
  const CVector after = dtft_at(r.filters[1], grid.omega0, ks).cwiseProduct(r.source_spectrum->values);
  EXPECT_LE((after - before).norm(), 1e-12 * before.norm());
}

TEST(Result, LeastSquaresSourceSpectrumIsExactForTrueFilters) {
  Rng rng(4);
  const auto inst = sparse_instance(rng, 3, 2, 6, 9, 11);
  const std::vector<std::size_t> channels = {0, 1, 2};
  const auto s = estimate_source_spectrum(inst.measurements, inst.ensemble.filter_sequences(), channels);
  const auto truth = true_spectrum(inst);
  EXPECT_LE((s.values - truth.values).norm(), 1e-11 * truth.values.norm());
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(0));
  EXPECT_THROW(s.at(0), PreconditionError);
}

TEST(Omp, RecoversSparseVectorExactly) {
  Rng rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix a(20, 40);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = {g(rng), g(rng)};
    CVector x = CVector::Zero(40);
    x(3) = 1.0;
    x(17) = Complex(0.0, -2.0);
    x(31) = 0.5;
    const auto r = omp(a, a * x, 3);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.support, (std::vector<int>{3, 17, 31}));
    EXPECT_LE((r.coefficients - x).norm(), 1e-10);
  }
}

TEST(Omp, StopsEarlyOnZeroResidualAndFlagsBadInputs) {
  CMatrix a = CMatrix::Identity(4, 4);
  CVector y = CVector::Zero(4);
  y(2) = 1.0;
  const auto r = omp(a, y, 3);
  EXPECT_EQ(r.support, (std::vector<int>{2}));
  EXPECT_FALSE(omp(a, y + CVector::Ones(4), 5).converged);
  a.col(1).setZero();
  EXPECT_THROW(omp(a, y, 1), PreconditionError);
}

TEST(NbOmp, RecoversFiltersWithKnownSource) {
  Rng rng(6);
  const auto inst = sparse_instance(rng, 3, 2, 16, 14, 20);
  const auto r = nb_omp(inst.measurements, true_spectrum(inst), 2, 16);
  EXPECT_EQ(r.status, RecoveryStatus::ok);
  ASSERT_EQ(r.filters.size(), 3u);
  const auto truth = inst.ensemble.filter_sequences();
  for (std::size_t n = 0; n < 3; ++n) EXPECT_LT(max_abs_difference(r.filters[n], truth[n]), 1e-10);
}

TEST(NbOmp, VanishingSourceNamesTheIndex) {
  Rng rng(7);
  const auto inst = sparse_instance(rng, 2, 2, 8, 6, 10);
  auto s = true_spectrum(inst);
  s.values(3) = 0.0;
  try {
    nb_omp(inst.measurements, s, 2, 8);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("4"), std::string::npos);
  }
}

TEST(Tpi, TruncateBlocksKeepsLargestPerBlock) {
  CVector g(6);
  g << 0.1, -3.0, 2.0, 5.0, Complex(0.0, 0.2), 0.2;
  const CVector t = truncate_blocks(g, 1, 3);
  CVector expected = CVector::Zero(6);
  expected(1) = -3.0;
  expected(3) = 5.0;
  EXPECT_EQ(t, expected);
  const CVector tie = truncate_blocks(CVector::Ones(4), 1, 2);
  EXPECT_EQ(tie(0), Complex(1.0));
  EXPECT_EQ(tie(1), Complex(0.0));
  EXPECT_EQ(tie(2), Complex(1.0));
}

TEST(Tpi, RecoversWellSampledInstance) {
  Rng rng(8);
  int hits = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing_support::mixture_instance(rng, 2, 16, 28);
    const auto sys = build_cross_relation(inst.measurements, 16);
    TpiOptions opts;
    opts.refine_support = true;
    const auto r = tpi(sys, 2, omp_initialization(sys, 2), opts);
    EXPECT_FALSE(r.objective_trace.empty());
    EXPECT_LE(r.final_objective, r.initial_objective + 1e-12);
    if (filter_error_db(inst.ensemble.filter_sequences(), r.filters, 16) < -50.0) ++hits;
  }
  EXPECT_GE(hits, 9);
}

TEST(Tpi, ResultIsInCanonicalFrame) {
  Rng rng(9);
  const auto inst = sparse_instance(rng, 2, 2, 8, 15, 15);
  const auto sys = build_cross_relation(inst.measurements, 8);
  const auto r = tpi(sys, 2, omp_initialization(sys, 2));
  ASSERT_FALSE(r.filters[0].is_zero());
  EXPECT_EQ(r.filters[0].offset(), 0);
  EXPECT_NEAR(std::abs(r.filters[0][0] - 1.0), 0.0, 1e-12);
}

TEST(Bdc, RecoversWellSampledInstance) {
  Rng rng(10);
  int hits = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing_support::mixture_instance(rng, 2, 16, 28);
    BdcOptions opts;
    opts.refine_support = true;
    const auto r = bdc(inst.measurements, 2, 16, opts);
    if (r.status == RecoveryStatus::ok &&
        filter_error_db(inst.ensemble.filter_sequences(), r.filters, 16) < -50.0) {
      ++hits;
    }
  }
  EXPECT_GE(hits, 9);
}

TEST(Bdc, RequiresSharedIndexSets) {
  MeasurementSet m{FrequencyGrid::fourier(kTwoPi / 8, 8, {{1, 2}, {1, 3}}), ConvolutionMode::linear,
                   {CVector::Ones(2), CVector::Ones(2)}};
  EXPECT_THROW(bdc(m, 1, 4), PreconditionError);
}

TEST(Bdc, ZeroInitialSpectrumIsDegenerate) {
  Rng rng(11);
  const auto inst = sparse_instance(rng, 2, 2, 8, 15, 15);
  BdcOptions opts;
  opts.initial_spectrum = CVector::Zero(15);
  EXPECT_EQ(bdc(inst.measurements, 2, 8, opts).status, RecoveryStatus::degenerate);
}

TEST(EigenSolver, RecoversFullLengthFilters) {
  Rng rng(12);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    ChannelEnsemble e;
    e.source = random_linear_complexity(3, 20, rng);
    for (int n = 0; n < 2; ++n) {
      std::vector<Complex> taps(8);
      for (auto& t : taps) t = {g(rng), g(rng)};
      e.filters.push_back(SparseFilterSpec{8, 8, {0, 1, 2, 3, 4, 5, 6, 7}, taps});
    }
    std::vector<int> ks(15);
    std::iota(ks.begin(), ks.end(), 1);
    const auto grid = FrequencyGrid::fourier(kTwoPi / 28, 28, {ks, ks});
    const auto sys = build_cross_relation(measure_fourier(e, grid).measurements, 8);
    const auto r = nonsparse_eigen(sys);
    EXPECT_EQ(r.status, RecoveryStatus::ok);
    EXPECT_LT(filter_error_db(e.filter_sequences(), r.filters, 8), -100.0);
  }
}

TEST(EigenSolver, TooFewSamplesIsNonUnique) {
  Rng rng(13);
  const auto inst = sparse_instance(rng, 2, 8, 8, 10, 10, 16);
  const auto r = nonsparse_eigen(build_cross_relation(inst.measurements, 8));
  EXPECT_EQ(r.status, RecoveryStatus::non_unique);
}
