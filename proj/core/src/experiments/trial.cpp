#include "cmbd/experiments/trial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "cmbd/alignment.hpp"
#include "cmbd/coprime.hpp"
#include "cmbd/errors.hpp"
#include "cmbd/measurement.hpp"
#include "cmbd/recovery/bdc.hpp"
#include "cmbd/recovery/exhaustive.hpp"
#include "cmbd/recovery/nonsparse.hpp"
#include "cmbd/recovery/omp.hpp"
#include "cmbd/recovery/pairwise.hpp"
#include "cmbd/recovery/tpi.hpp"
#include "cmbd/rng.hpp"

namespace cmbd {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Instance {
  ChannelEnsemble ensemble;
  RealizedSource source;
  MeasurementSet measurements;
  int support_bound = 0;
  int source_length = 0;
};

/// Channel pairs whose coprimeness the solvers rely on.
std::vector<std::pair<std::size_t, std::size_t>> checked_pairs(std::size_t channels) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a + 1 < channels; a += 2) out.emplace_back(a, a + 1);
  return out;
}

SourceSpec draw_source(const ExperimentConfig& cfg, int complexity, int length, int period, Rng& rng) {
  switch (cfg.source) {
    case SourceModel::gaussian_mixture: return gaussian_mixture_source(period);
    case SourceModel::linear_complexity: return random_linear_complexity(complexity, length, rng);
    case SourceModel::explicit_random: return random_explicit_source(length, rng);
  }
  throw PreconditionError("unknown source model");
}

FrequencyGrid instance_grid(const ExperimentConfig& cfg, const CellKey& cell, int support_bound,
                            int source_length, int period) {
  const auto channels = static_cast<std::size_t>(cfg.channels);
  switch (cfg.kind) {
    case ExperimentKind::sparse: {
      const int bar_m = cfg.source == SourceModel::gaussian_mixture
                            ? period
                            : std::max(2 * support_bound - 1, source_length);
      return consecutive_universal_grid(cell.measurements, bar_m, channels);
    }
    case ExperimentKind::fir:
      return consecutive_universal_grid(cell.measurements,
                                        std::max(2 * support_bound - 1, source_length), channels);
    case ExperimentKind::pairwise: {
      auto sets = pairwise_channel_sets(cfg.channels, cfg.resolved_pairs(), cell.measurements,
                                        cell.sparsity);
      int covered = 0;
      for (const auto& s : sets) covered = std::max(covered, *std::max_element(s.begin(), s.end()));
      const int bar_m = std::max({covered, 2 * support_bound - 1, source_length});
      return FrequencyGrid::fourier(kTwoPi / bar_m, bar_m, std::move(sets));
    }
  }
  throw PreconditionError("unknown experiment kind");
}

/// Draws until the filter pairs are coprime and the source spectrum is
/// non-vanishing on the grid, counting both kinds of redraw.
std::optional<Instance> draw_instance(const ExperimentConfig& cfg, const CellKey& cell, Rng& rng,
                                      TrialOutcome& outcome) {
  const bool fir = cfg.kind == ExperimentKind::fir;
  const int mx = cell.support_bound;
  const int sparsity = fir ? mx : cell.sparsity;
  const int period = cfg.resolved_period(cell.sparsity);
  int length = 0;
  if (fir) {
    length = cell.measurements + mx;
  } else if (cfg.source == SourceModel::gaussian_mixture) {
    length = period;
  } else {
    length = cfg.source_length > 0 ? cfg.source_length : period;
  }
  const FrequencyGrid grid = instance_grid(cfg, cell, mx, length, period);
  const auto pairs = checked_pairs(static_cast<std::size_t>(cfg.channels));

  for (int attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
    Instance inst;
    inst.support_bound = mx;
    inst.source_length = length;
    inst.ensemble.mode = cfg.mode;
    inst.ensemble.period = period;
    for (int n = 0; n < cfg.channels; ++n) {
      inst.ensemble.filters.push_back(random_sparse_filter(sparsity, mx, rng, cfg.complex_amplitudes || fir));
    }
    const auto filters = inst.ensemble.filter_sequences();
    const bool coprime = std::all_of(pairs.begin(), pairs.end(), [&](const auto& p) {
      return coprimeness_check(filters[p.first], filters[p.second]).coprime;
    });
    if (!coprime) {
      ++outcome.coprime_resamples;
      continue;
    }
    inst.ensemble.source = draw_source(cfg, cell.complexity, length, period, rng);
    MeasureOutcome measured = measure_fourier(inst.ensemble, grid, cfg.nonvanishing_tolerance);
    if (!measured.source_nonvanishing) {
      ++outcome.nonvanishing_resamples;
      continue;
    }
    inst.source = realize_source(inst.ensemble.source);
    inst.measurements = std::move(measured.measurements);
    return inst;
  }
  return std::nullopt;
}

bool failure_status(RecoveryStatus s) {
  return s == RecoveryStatus::degenerate || s == RecoveryStatus::non_unique ||
         s == RecoveryStatus::not_coprime || s == RecoveryStatus::alignment_failure;
}

RecoveryResult solve(const ExperimentConfig& cfg, const CellKey& cell, const Instance& inst) {
  const int mx = inst.support_bound;
  const int sparsity = cfg.kind == ExperimentKind::fir ? mx : cell.sparsity;
  const MeasurementSet& m = inst.measurements;
  switch (cfg.kind) {
    case ExperimentKind::pairwise: {
      PairwiseOptions opts;
      opts.solver = cell.solver == SolverId::bdc          ? PairSolver::bdc
                    : cell.solver == SolverId::exhaustive ? PairSolver::exhaustive
                                                          : PairSolver::tpi;
      opts.tpi = cfg.tpi;
      opts.bdc = cfg.bdc;
      opts.exhaustive = cfg.exhaustive;
      opts.pair_count = cfg.resolved_pairs();
      return pairwise_source_recovery(m, sparsity, mx, inst.source_length, opts);
    }
    case ExperimentKind::sparse:
    case ExperimentKind::fir:
      break;
  }
  switch (cell.solver) {
    case SolverId::nb_omp: {
      SpectrumSamples truth;
      truth.ks = m.grid.union_indices();
      truth.values = source_on_grid(inst.source, m.grid, truth.ks);
      return nb_omp(m, truth, sparsity, mx);
    }
    case SolverId::bdc:
      return bdc(m, sparsity, mx, cfg.bdc);
    case SolverId::tpi: {
      const CrossRelationSystem sys = build_cross_relation(m, mx);
      return tpi(sys, sparsity, omp_initialization(sys, sparsity), cfg.tpi);
    }
    case SolverId::exhaustive: {
      const CrossRelationSystem sys = build_cross_relation(m, mx);
      const ExhaustiveResult ex = exhaustive_search(sys, sparsity, cfg.exhaustive);
      RecoveryResult r;
      r.iterations = 1;
      r.converged = true;
      if (ex.solutions.empty()) {
        r.filters = {ComplexSequence{}, ComplexSequence{}};
        r.status = RecoveryStatus::non_unique;
        return r;
      }
      r.filters = split_stacked(ex.solutions.front().gamma, mx);
      if (!ex.unique_up_to_ambiguity) r.status = RecoveryStatus::non_unique;
      canonicalize(r, m.grid);
      return r;
    }
    case SolverId::eigen:
      return nonsparse_eigen(build_cross_relation(m, mx));
    case SolverId::pairwise:
      break;
  }
  throw PreconditionError("solver " + to_string(cell.solver) + " is not valid for this kind");
}

double aligned_error(const ExperimentConfig& cfg, const Instance& inst, const RecoveryResult& r) {
  const auto truth = inst.ensemble.filter_sequences();
  const ShiftRange range = ShiftRange::for_support_bound(inst.support_bound);
  if (r.filters.empty() || std::all_of(r.filters.begin(), r.filters.end(),
                                       [](const auto& f) { return f.is_zero(); })) {
    return 0.0;
  }
  if (cfg.kind == ExperimentKind::pairwise) {
    if (!r.source_time) return kInfinity;
    return align_ensemble(truth, inst.source.time, r.filters, *r.source_time, range).error_db;
  }
  const std::span<const ComplexSequence> compared(truth.data(), r.filters.size());
  return align_up_to_shift_scale(compared, r.filters, range).error_db;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, const CellKey& cell, int trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(cell.sparsity),
                              static_cast<std::uint64_t>(cell.support_bound),
                              static_cast<std::uint64_t>(cell.measurements),
                              static_cast<std::uint64_t>(cell.complexity),
                              static_cast<std::uint64_t>(trial)});
}

TrialOutcome run_trial(const ExperimentConfig& config, const CellKey& cell, int trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialOutcome out;
  out.config_id = config.id;
  out.cell = cell;
  out.trial = trial;
  out.seed = trial_seed(config.seed, cell, trial);
  Rng rng(out.seed);
  try {
    const auto inst = draw_instance(config, cell, rng, out);
    if (!inst) {
      out.reason = "resample_limit";
      out.aligned_error_db = kInfinity;
    } else {
      const RecoveryResult r = solve(config, cell, *inst);
      out.iterations = r.iterations;
      if (failure_status(r.status)) {
        out.reason = to_string(r.status);
        out.aligned_error_db = kInfinity;
      } else {
        out.aligned_error_db = aligned_error(config, *inst, r);
        if (out.aligned_error_db > config.threshold_db) {
          out.reason = r.status == RecoveryStatus::ok ? "above_threshold" : to_string(r.status);
        }
      }
    }
  } catch (const BudgetExceeded&) {
    out.reason = "budget";
    out.aligned_error_db = kInfinity;
  } catch (const PreconditionError&) {
    out.reason = "precondition";
    out.aligned_error_db = kInfinity;
  } catch (const Error&) {
    out.reason = "solver_error";
    out.aligned_error_db = kInfinity;
  }
  out.success = out.aligned_error_db <= config.threshold_db;
  if (out.success) out.reason = "ok";
  out.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

FrequencyGrid main_lobe_grid(int source_length, int support_bound, int count, double omega1,
                             std::size_t channels) {
  if (source_length < 1 || support_bound < 1 || count < 1) {
    throw PreconditionError("main_lobe_grid: M_s, M_x and K must be positive");
  }
  const double omega0 = std::min(2.0 * kTwoPi / (source_length * count), kTwoPi / (2 * support_bound - 1));
  const int first = static_cast<int>(std::ceil((omega1 - kTwoPi / source_length) / omega0));
  std::vector<int> ks(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ks[static_cast<std::size_t>(i)] = first + i;
  const int bar_m = static_cast<int>(std::floor(kTwoPi / omega0 + 1e-9));
  return FrequencyGrid::fourier(omega0, bar_m, std::vector<std::vector<int>>(channels, ks));
}

std::vector<std::vector<int>> pairwise_channel_sets(int channels, int pairs, int count, int sparsity) {
  if (count < 3) throw PreconditionError("pairwise grid: K must exceed the two-index overlap");
  if (pairs < 1 || 2 * pairs > channels) throw PreconditionError("pairwise grid: bad pair count");
  std::vector<std::vector<int>> sets;
  for (int r = 0; r < pairs; ++r) {
    std::vector<int> ks(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) ks[static_cast<std::size_t>(i)] = r * (count - 2) + 1 + i;
    sets.push_back(ks);
    sets.push_back(ks);
  }
  std::vector<int> extra(static_cast<std::size_t>(std::min(2 * sparsity, count)));
  for (std::size_t i = 0; i < extra.size(); ++i) extra[i] = static_cast<int>(i) + 1;
  for (int n = 2 * pairs; n < channels; ++n) sets.push_back(extra);
  return sets;
}

}  // namespace cmbd
