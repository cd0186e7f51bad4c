#include <benchmark/benchmark.h>

#include <numeric>

#include "cmbd/grid.hpp"
#include "cmbd/measurement.hpp"
#include "cmbd/recovery/exhaustive.hpp"
#include "cmbd/recovery/omp.hpp"
#include "cmbd/recovery/tpi.hpp"
#include "cmbd/sos.hpp"
#include "cmbd/vandermonde.hpp"

using namespace cmbd;

namespace {

MeasurementSet mixture_measurements(int sparsity, int support_bound, int count, std::uint64_t seed) {
  Rng rng(seed);
  ChannelEnsemble e;
  e.source = gaussian_mixture_source(2 * support_bound);
  e.filters = {random_sparse_filter(sparsity, support_bound, rng), random_sparse_filter(sparsity, support_bound, rng)};
  std::vector<int> ks(static_cast<std::size_t>(count));
  std::iota(ks.begin(), ks.end(), 1);
  const auto grid = FrequencyGrid::fourier(kTwoPi / (2 * support_bound), 2 * support_bound, {ks, ks});
  return measure_fourier(e, grid).measurements;
}

void BM_Omp(benchmark::State& state) {
  const int cols = static_cast<int>(state.range(0));
  const CMatrix a = CMatrix::Random(cols / 2, cols);
  CVector x = CVector::Zero(cols);
  x(1) = 1.0;
  x(cols / 3) = -2.0;
  x(cols - 2) = Complex(0.0, 1.5);
  const CVector y = a * x;
  for (auto _ : state) benchmark::DoNotOptimize(omp(a, y, 3));
}
BENCHMARK(BM_Omp)->Arg(32)->Arg(64)->Arg(128);

void BM_Tpi(benchmark::State& state) {
  const auto m = mixture_measurements(4, 32, static_cast<int>(state.range(0)), 7);
  const auto sys = build_cross_relation(m, 32);
  const CVector g0 = omp_initialization(sys, 4);
  TpiOptions opts;
  opts.refine_support = true;
  for (auto _ : state) benchmark::DoNotOptimize(tpi(sys, 4, g0, opts));
}
BENCHMARK(BM_Tpi)->Arg(33)->Arg(48);

void BM_Exhaustive(benchmark::State& state) {
  const int mx = static_cast<int>(state.range(0));
  const auto sys = build_cross_relation(mixture_measurements(2, mx, 6, 11), mx);
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(sys, 2));
}
BENCHMARK(BM_Exhaustive)->Arg(8)->Arg(16);

void BM_CertifySpark(benchmark::State& state) {
  const int columns = static_cast<int>(state.range(0));
  const auto grid = consecutive_universal_grid(columns / 2, columns);
  const auto op = grid.sensing_operator(grid.channel_sets[0], columns);
  for (auto _ : state) benchmark::DoNotOptimize(certify_full_spark(op));
}
BENCHMARK(BM_CertifySpark)->Arg(10)->Arg(12);

void BM_SosAcquisition(benchmark::State& state) {
  Rng rng(3);
  const auto y = realize_source(random_explicit_source(16, rng)).time;
  const SosKernel kernel{{0, 1, 2, 3, 4, 5}, kTwoPi / 16, 21};
  for (auto _ : state) benchmark::DoNotOptimize(acquire_via_kernel(y, 16, kernel));
}
BENCHMARK(BM_SosAcquisition);

}  // namespace

BENCHMARK_MAIN();
