#include "cmbd/recovery/pairwise.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <map>

#include "cmbd/errors.hpp"
#include "cmbd/recovery/omp.hpp"

namespace cmbd {

namespace {

double wrap_phase(double a) { return std::remainder(a, kTwoPi); }

MeasurementSet select_channels(const MeasurementSet& m, std::span<const std::size_t> channels) {
  MeasurementSet out;
  out.mode = m.mode;
  out.grid = m.grid;
  out.grid.channel_sets.clear();
  for (const std::size_t n : channels) {
    out.grid.channel_sets.push_back(m.grid.channel_sets[n]);
    out.channels.push_back(m.channels[n]);
  }
  return out;
}

std::vector<int> intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> sa = a, sb = b, out;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

/// Two shared indices with the smallest gap.
std::array<int, 2> closest_pair(const std::vector<int>& shared) {
  std::array<int, 2> best{shared[0], shared[1]};
  for (std::size_t i = 1; i + 1 < shared.size(); ++i) {
    if (shared[i + 1] - shared[i] < best[1] - best[0]) best = {shared[i], shared[i + 1]};
  }
  return best;
}

int chain_length(const FrequencyGrid& grid) {
  const auto& sets = grid.channel_sets;
  int r = 0;
  while (static_cast<std::size_t>(2 * r + 1) < sets.size()) {
    const auto& a = sets[static_cast<std::size_t>(2 * r)];
    if (a != sets[static_cast<std::size_t>(2 * r + 1)]) break;
    if (r > 0 && intersection(sets[static_cast<std::size_t>(2 * r - 2)], a).size() < 2) break;
    ++r;
  }
  return r;
}

}  // namespace

OverlapAmbiguity relative_ambiguity_from_overlap(std::array<Complex, 2> pair_a,
                                                 std::array<Complex, 2> pair_b,
                                                 std::array<int, 2> ks, double omega0,
                                                 ShiftRange admissible, double tolerance_rad) {
  for (int i = 0; i < 2; ++i) {
    if (pair_a[static_cast<std::size_t>(i)] == Complex{} || pair_b[static_cast<std::size_t>(i)] == Complex{}) {
      throw PreconditionError("overlap: spectrum value is zero");
    }
  }
  if (ks[0] == ks[1]) throw PreconditionError("overlap: the two frequencies coincide");
  if (admissible.hi < admissible.lo) throw PreconditionError("overlap: empty shift range");
  const double step = (ks[1] - ks[0]) * omega0;
  if (std::abs(step) * (admissible.hi - admissible.lo) >= kTwoPi) {
    throw Error("overlap: phase ambiguity, the shift range admits several integer solutions");
  }
  const Complex rho0 = pair_a[0] / pair_b[0];
  const Complex rho1 = pair_a[1] / pair_b[1];
  const double theta = std::arg(rho1 / rho0);
  int best = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int d = admissible.lo; d <= admissible.hi; ++d) {
    const double residual = std::abs(wrap_phase(theta - step * d));
    if (residual < best_residual) {
      best_residual = residual;
      best = d;
    }
  }
  if (best_residual > tolerance_rad) {
    throw Error("overlap: no integer shift fits the phase difference (residual " +
                std::to_string(best_residual) + " rad)");
  }
  OverlapAmbiguity out;
  out.shift_delta = best;
  out.scale_ratio = rho0 * std::polar(1.0, -ks[0] * omega0 * best);
  return out;
}

RecoveryResult solve_pair(const MeasurementSet& measurements, std::size_t first,
                          std::size_t second, int sparsity, int support_bound,
                          const PairwiseOptions& options) {
  const std::size_t chosen[] = {first, second};
  const MeasurementSet pair = select_channels(measurements, chosen);
  const CrossRelationSystem sys = build_cross_relation(pair, support_bound, 0, 1);
  RecoveryResult r;
  switch (options.solver) {
    case PairSolver::tpi:
      r = tpi(sys, sparsity, omp_initialization(sys, sparsity), options.tpi);
      break;
    case PairSolver::bdc:
      r = bdc(pair, sparsity, support_bound, options.bdc);
      break;
    case PairSolver::exhaustive: {
      const ExhaustiveResult ex = exhaustive_search(sys, sparsity, options.exhaustive);
      r.iterations = 1;
      r.converged = true;
      if (!ex.solutions.empty()) {
        r.filters = split_stacked(ex.solutions.front().gamma, support_bound);
      } else {
        r.filters = {ComplexSequence{}, ComplexSequence{}};
      }
      if (!ex.unique_up_to_ambiguity) r.status = RecoveryStatus::non_unique;
      break;
    }
  }
  const std::size_t both[] = {0, 1};
  r.source_spectrum = estimate_source_spectrum(pair, r.filters, both);
  canonicalize(r, measurements.grid);
  return r;
}

RecoveryResult pairwise_source_recovery(const MeasurementSet& measurements, int sparsity,
                                        int support_bound, int source_length,
                                        const PairwiseOptions& options) {
  measurements.validate();
  const FrequencyGrid& grid = measurements.grid;
  if (grid.kind != GridKind::fourier) {
    throw PreconditionError("pairwise recovery: only Fourier grids are supported");
  }
  if (source_length < 1) throw PreconditionError("pairwise recovery: M_s must be positive");
  const int available = chain_length(grid);
  const int pairs = options.pair_count.value_or(available);
  if (pairs < 1 || pairs > available) {
    throw PreconditionError("pairwise recovery: channels do not form " + std::to_string(std::max(pairs, 1)) +
                            " pairs with equal index sets and overlaps of at least two indices");
  }

  RecoveryResult out;
  out.converged = true;
  std::map<int, std::pair<Complex, int>> stitched;
  std::vector<SpectrumSamples> aligned;
  const ShiftRange admissible = ShiftRange::for_support_bound(support_bound);

  for (int r = 0; r < pairs; ++r) {
    const auto a = static_cast<std::size_t>(2 * r);
    RecoveryResult pr = solve_pair(measurements, a, a + 1, sparsity, support_bound, options);
    out.iterations += pr.iterations;
    out.converged = out.converged && pr.converged;
    if (pr.status != RecoveryStatus::ok && pr.status != RecoveryStatus::not_converged &&
        out.status == RecoveryStatus::ok) {
      out.status = pr.status;
    }
    SpectrumSamples spec = *pr.source_spectrum;
    if (r > 0) {
      const auto shared = intersection(grid.channel_sets[a - 2], grid.channel_sets[a]);
      const auto ks = closest_pair(shared);
      const SpectrumSamples& prev = aligned.back();
      OverlapAmbiguity amb;
      try {
        amb = relative_ambiguity_from_overlap({prev.at(ks[0]), prev.at(ks[1])},
                                              {spec.at(ks[0]), spec.at(ks[1])}, ks, grid.omega0,
                                              admissible, options.shift_tolerance_rad);
      } catch (const PreconditionError&) {
        throw;
      } catch (const Error&) {
        out.status = RecoveryStatus::alignment_failure;
      }
      for (std::size_t i = 0; i < spec.ks.size(); ++i) {
        spec.values(static_cast<Eigen::Index>(i)) *=
            amb.scale_ratio * std::polar(1.0, spec.ks[i] * grid.omega0 * amb.shift_delta);
      }
      for (auto& f : pr.filters) f = f.shifted(amb.shift_delta).scaled(1.0 / amb.scale_ratio);
    }
    for (std::size_t i = 0; i < spec.ks.size(); ++i) {
      auto& [sum, count] = stitched[spec.ks[i]];
      sum += spec.values(static_cast<Eigen::Index>(i));
      ++count;
    }
    aligned.push_back(spec);
    for (auto& f : pr.filters) out.filters.push_back(std::move(f));
  }

  SpectrumSamples total;
  total.values.resize(static_cast<Eigen::Index>(stitched.size()));
  {
    Eigen::Index i = 0;
    for (const auto& [k, sc] : stitched) {
      total.ks.push_back(k);
      total.values(i++) = sc.first / static_cast<double>(sc.second);
    }
  }
  if (static_cast<int>(total.ks.size()) < source_length) {
    throw PreconditionError("pairwise recovery: the pairs cover " + std::to_string(total.ks.size()) +
                            " frequencies, fewer than M_s = " + std::to_string(source_length));
  }

  // The stitched frame places the source on [o, o + M_s) for an unknown
  // o in [0, M_x); each offset is fitted and the best one kept.
  const double target_norm = total.values.norm();
  double best_residual = std::numeric_limits<double>::infinity();
  int fitting = 0;
  int best_offset = 0;
  for (int o = 0; o < support_bound; ++o) {
    CMatrix v(static_cast<Eigen::Index>(total.ks.size()), source_length);
    for (std::size_t r = 0; r < total.ks.size(); ++r) {
      const Complex g = ipow(grid.point(total.ks[r]), -1);
      for (int m = 0; m < source_length; ++m) v(static_cast<Eigen::Index>(r), m) = ipow(g, o + m);
    }
    const CVector s = v.colPivHouseholderQr().solve(total.values);
    const double residual = (v * s - total.values).norm() / target_norm;
    if (residual <= options.frame_tolerance) ++fitting;
    if (residual < best_residual) {
      best_residual = residual;
      best_offset = o;
      out.source_time = ComplexSequence::from_dense(s, 0);
    }
  }
  if (fitting != 1 && out.status == RecoveryStatus::ok) out.status = RecoveryStatus::alignment_failure;

  // Re-express everything in the frame where the source starts at index 0,
  // so the filters of the remaining channels lie in [0, M_x).
  for (auto& f : out.filters) f = f.shifted(best_offset);
  for (std::size_t i = 0; i < total.ks.size(); ++i) {
    total.values(static_cast<Eigen::Index>(i)) *= std::polar(1.0, total.ks[i] * grid.omega0 * best_offset);
  }
  out.source_spectrum = total;

  std::vector<std::size_t> rest;
  for (std::size_t n = static_cast<std::size_t>(2 * pairs); n < measurements.channels.size(); ++n) rest.push_back(n);
  if (!rest.empty()) {
    const MeasurementSet remaining = select_channels(measurements, rest);
    const RecoveryResult nb = nb_omp(remaining, total, sparsity, support_bound);
    out.converged = out.converged && nb.converged;
    for (const auto& f : nb.filters) out.filters.push_back(f);
  }
  out.final_objective = best_residual;
  return out;
}

}  // namespace cmbd
