#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "cmbd/alignment.hpp"
#include "cmbd/errors.hpp"
#include "cmbd/experiments/phase_transition.hpp"
#include "cmbd/io.hpp"
#include "cmbd/measurement.hpp"
#include "cmbd/recovery/exhaustive.hpp"
#include "cmbd/recovery/nonsparse.hpp"
#include "cmbd/recovery/omp.hpp"
#include "cmbd/recovery/pairwise.hpp"
#include "cmbd/sos.hpp"

namespace cmbd::cli {

namespace {

using nlohmann::json;

Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  in >> re;
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw PreconditionError("expected 're,im', got '" + text + "'");
  }
  return {re, im};
}

void echo(std::ostream& out, const json& resolved) { out << "resolved: " << resolved.dump() << "\n"; }

// ---------------------------------------------------------------- gen

struct GenArgs {
  int sparsity = 0;
  int support_bound = 0;
  int channels = 2;
  std::string source = "gaussians";
  int period = 0;
  int source_length = 0;
  int complexity = 1;
  std::string mode = "linear";
  bool complex_amplitudes = false;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const int period = a.period > 0 ? a.period : 2 * a.support_bound;
  const int length = a.source_length > 0 ? a.source_length : period;
  echo(out, {{"subcommand", "gen"}, {"L", a.sparsity}, {"Mx", a.support_bound}, {"N", a.channels},
             {"source", a.source}, {"M", period}, {"Ms", length}, {"Lc", a.complexity},
             {"mode", a.mode}, {"complex", a.complex_amplitudes}, {"seed", a.seed}, {"out", a.output}});
  if (a.channels < 2) throw PreconditionError("gen: at least two channels are required");
  Rng rng(a.seed);
  ChannelEnsemble e;
  e.mode = a.mode == "circular" ? ConvolutionMode::circular : ConvolutionMode::linear;
  e.period = period;
  for (int n = 0; n < a.channels; ++n) {
    e.filters.push_back(random_sparse_filter(a.sparsity, a.support_bound, rng, a.complex_amplitudes));
  }
  if (a.source == "gaussians") {
    e.source = gaussian_mixture_source(period);
  } else if (a.source == "linear-complexity") {
    e.source = random_linear_complexity(a.complexity, length, rng);
  } else {
    e.source = random_explicit_source(length, rng);
  }
  e.validate();
  write_text_file(a.output, ensemble_to_json(e));
  out << "wrote " << a.output << "\n";
  return kOk;
}

// ---------------------------------------------------------------- measure

struct MeasureArgs {
  std::string ensemble;
  int count = 0;
  std::string sets_file;
  int alias_bound = 0;
  std::string z0;
  std::vector<int> powers;
  bool via_kernel = false;
  bool allow_uncertified = false;
  std::string output;
};

int default_alias_bound(const ChannelEnsemble& e) {
  if (const auto* f = std::get_if<FourierGaussianMixture>(&e.source)) return f->grid_length;
  int mx = 0;
  for (const auto& f : e.filters) mx = std::max(mx, f.support_bound);
  return std::max(2 * mx - 1, source_length(e.source));
}

int cmd_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err) {
  const ChannelEnsemble e = ensemble_from_json(read_text_file(a.ensemble));
  const int bar_m = a.alias_bound > 0 ? a.alias_bound : default_alias_bound(e);
  const std::size_t channels = e.filters.size();
  echo(out, {{"subcommand", "measure"}, {"ensemble", a.ensemble}, {"K", a.count}, {"sets", a.sets_file},
             {"barM", bar_m}, {"z0", a.z0}, {"pk", a.powers}, {"via_kernel", a.via_kernel},
             {"allow_uncertified", a.allow_uncertified}, {"out", a.output}});

  FrequencyGrid grid;
  if (!a.z0.empty()) {
    if (a.powers.empty()) throw PreconditionError("measure: --z0 needs --pk");
    grid = FrequencyGrid::z_domain(parse_complex(a.z0), bar_m,
                                   std::vector<std::vector<int>>(channels, a.powers));
  } else if (!a.sets_file.empty()) {
    const json sets = json::parse(read_text_file(a.sets_file));
    grid = FrequencyGrid::fourier(kTwoPi / bar_m, bar_m, sets.get<std::vector<std::vector<int>>>());
  } else {
    if (a.count < 1) throw PreconditionError("measure: give --K, --sets or --z0/--pk");
    grid = consecutive_universal_grid(a.count, bar_m, channels);
  }
  grid.validate();
  if (!grid.certified) {
    const SparkCertificate cert = certify_grid(grid);
    if (!cert.full_spark() && !a.allow_uncertified) {
      err << "measure: grid is not certified universal (" 
          << (cert.status == SparkStatus::deficient ? "deficient" : "uncertified")
          << "); pass --allow-uncertified to proceed\n";
      return kCertification;
    }
  }

  MeasureOutcome m = measure_fourier(e, grid);
  if (!m.source_nonvanishing) {
    err << "warning: source spectrum nearly vanishes at " << m.vanishing_indices.size() << " indices\n";
  }
  if (a.via_kernel) {
    if (grid.kind != GridKind::fourier) throw PreconditionError("measure: --via-kernel needs a Fourier grid");
    const auto outputs = e.outputs();
    for (std::size_t n = 0; n < channels; ++n) {
      const auto& ks = grid.channel_sets[n];
      const int length = std::max<int>(1, static_cast<int>(outputs[n].end()));
      const SosKernel kernel{ks, grid.omega0, length + static_cast<int>(ks.size()) - 1};
      m.measurements.channels[n] = acquire_via_kernel(outputs[n], length, kernel);
    }
  }
  std::ofstream file(a.output);
  if (!file) throw PreconditionError("cannot write '" + a.output + "'");
  write_measurements_csv(file, m.measurements);
  out << "wrote " << a.output << "\n";
  return kOk;
}

// ---------------------------------------------------------------- recover

struct RecoverArgs {
  std::string measurements;
  std::string solver;
  int sparsity = 0;
  int support_bound = 0;
  int source_length = 0;
  std::string truth;
  std::string pair_solver = "tpi";
  int max_iterations = 0;
  double tolerance = 1e-3;
  bool no_refine = false;
  std::uint64_t budget = 20'000'000;
  std::string output;
};

int cmd_recover(const RecoverArgs& a, std::ostream& out) {
  std::ifstream in(a.measurements);
  if (!in) throw PreconditionError("cannot open '" + a.measurements + "'");
  const MeasurementSet m = read_measurements_csv(in);
  m.validate();
  const SolverId solver = solver_from_string(a.solver);
  echo(out, {{"subcommand", "recover"}, {"measurements", a.measurements}, {"solver", to_string(solver)},
             {"L", a.sparsity}, {"Mx", a.support_bound}, {"Ms", a.source_length}, {"truth", a.truth},
             {"pair_solver", a.pair_solver}, {"max_iterations", a.max_iterations},
             {"tolerance", a.tolerance}, {"refine", !a.no_refine}, {"budget", a.budget},
             {"out", a.output}});
  if (a.support_bound < 1) throw PreconditionError("recover: --Mx must be positive");

  std::optional<ChannelEnsemble> truth;
  if (!a.truth.empty()) truth = ensemble_from_json(read_text_file(a.truth));

  TpiOptions tpi_opts;
  tpi_opts.tolerance = a.tolerance;
  tpi_opts.refine_support = !a.no_refine;
  if (a.max_iterations > 0) tpi_opts.max_iterations = a.max_iterations;
  BdcOptions bdc_opts;
  bdc_opts.tolerance = a.tolerance;
  bdc_opts.refine_support = !a.no_refine;
  if (a.max_iterations > 0) bdc_opts.max_iterations = a.max_iterations;
  ExhaustiveOptions ex_opts;
  ex_opts.budget = a.budget;

  RecoveryResult r;
  switch (solver) {
    case SolverId::nb_omp: {
      if (!truth) throw PreconditionError("recover: nb-omp needs --truth for the source spectrum");
      SpectrumSamples s;
      s.ks = m.grid.union_indices();
      s.values = source_on_grid(realize_source(truth->source), m.grid, s.ks);
      r = nb_omp(m, s, a.sparsity, a.support_bound);
      break;
    }
    case SolverId::bdc:
      r = bdc(m, a.sparsity, a.support_bound, bdc_opts);
      break;
    case SolverId::tpi: {
      const CrossRelationSystem sys = build_cross_relation(m, a.support_bound);
      r = tpi(sys, a.sparsity, omp_initialization(sys, a.sparsity), tpi_opts);
      break;
    }
    case SolverId::exhaustive: {
      const CrossRelationSystem sys = build_cross_relation(m, a.support_bound);
      const ExhaustiveResult ex = exhaustive_search(sys, a.sparsity, ex_opts);
      out << "exhaustive: unique " << (ex.unique_up_to_ambiguity ? "true" : "false") << ", solutions "
          << ex.solution_count << ", clusters " << ex.clusters << ", pairs checked " << ex.pairs_checked
          << "/" << ex.pairs_total << "\n";
      r.iterations = 1;
      r.converged = true;
      if (ex.solutions.empty()) {
        r.filters = {ComplexSequence{}, ComplexSequence{}};
      } else {
        r.filters = split_stacked(ex.solutions.front().gamma, a.support_bound);
        canonicalize(r, m.grid);
      }
      if (!ex.unique_up_to_ambiguity) r.status = RecoveryStatus::non_unique;
      break;
    }
    case SolverId::eigen:
      r = nonsparse_eigen(build_cross_relation(m, a.support_bound));
      break;
    case SolverId::pairwise: {
      PairwiseOptions opts;
      const SolverId ps = solver_from_string(a.pair_solver);
      if (ps != SolverId::tpi && ps != SolverId::bdc && ps != SolverId::exhaustive) {
        throw PreconditionError("recover: --pair-solver must be tpi, bdc or exhaustive");
      }
      opts.solver = ps == SolverId::bdc ? PairSolver::bdc : ps == SolverId::exhaustive ? PairSolver::exhaustive
                                                                                      : PairSolver::tpi;
      opts.tpi = tpi_opts;
      opts.bdc = bdc_opts;
      opts.exhaustive = ex_opts;
      r = pairwise_source_recovery(m, a.sparsity, a.support_bound, a.source_length, opts);
      break;
    }
  }

  if (!a.output.empty()) {
    write_text_file(a.output, recovery_to_json(r));
    out << "wrote " << a.output << "\n";
  }
  out << "status " << to_string(r.status) << ", converged " << (r.converged ? "true" : "false")
      << ", iterations " << r.iterations << "\n";
  if (truth) {
    const auto filters = truth->filter_sequences();
    const ShiftRange range = ShiftRange::for_support_bound(a.support_bound);
    double error = 0.0;
    const bool any = std::any_of(r.filters.begin(), r.filters.end(), [](const auto& f) { return !f.is_zero(); });
    if (any && r.filters.size() <= filters.size()) {
      if (solver == SolverId::pairwise && r.source_time) {
        error = align_ensemble(filters, realize_source(truth->source).time, r.filters, *r.source_time, range)
                    .error_db;
      } else {
        const std::span<const ComplexSequence> compared(filters.data(), r.filters.size());
        error = align_up_to_shift_scale(compared, r.filters, range).error_db;
      }
    }
    out << "aligned_error_db " << format_real(error) << "\n";
  }
  return r.status == RecoveryStatus::ok && r.converged ? kOk : kNonConvergence;
}

// ---------------------------------------------------------------- experiment

int cmd_experiment(const std::string& config_path, const std::string& directory, std::ostream& out) {
  const ExperimentConfig cfg = config_from_json(read_text_file(config_path));
  echo(out, json::parse(config_to_json(cfg)));
  const PhaseTransitionGrid grid = run_phase_transition(cfg);
  write_phase_transition(directory, grid);
  out << grid_csv(grid);
  out << "wrote " << directory << "/{grid.csv,trials.csv,meta.json}\n";
  return kOk;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  int columns = 0;
  int count = 0;
  int first = 1;
  std::vector<int> rows;
  double omega0 = 0.0;
  std::string z0;
  std::uint64_t budget = 2'000'000;
  double tolerance = 1e-10;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
  std::vector<int> rows = a.rows;
  if (rows.empty()) {
    if (a.count < 1) throw PreconditionError("certify: give --K or --rows");
    for (int i = 0; i < a.count; ++i) rows.push_back(a.first + i);
  }
  if (a.columns < 1) throw PreconditionError("certify: --M must be positive");
  const double omega0 = a.omega0 > 0.0 ? a.omega0 : kTwoPi / a.columns;
  echo(out, {{"subcommand", "certify"}, {"M", a.columns}, {"rows", rows}, {"omega0", omega0},
             {"z0", a.z0}, {"budget", a.budget}, {"tolerance", a.tolerance}});
  const VandermondeOperator op =
      a.z0.empty() ? FrequencyGrid::fourier(omega0, a.columns, {rows}).sensing_operator(rows, a.columns)
                   : z_grid(parse_complex(a.z0), rows, a.columns);
  SparkOptions opts;
  opts.max_submatrices = a.budget;
  opts.relative_tolerance = a.tolerance;
  const SparkCertificate cert = certify_full_spark(op, opts);
  const char* status = cert.status == SparkStatus::full_spark ? "certified"
                       : cert.status == SparkStatus::deficient ? "deficient"
                                                                : "uncertified";
  out << "status " << status << "\n";
  out << "checked " << cert.submatrices_checked << " of " << cert.submatrices_total << "\n";
  if (!cert.witness.empty()) {
    out << "witness";
    for (const int c : cert.witness) out << ' ' << c;
    out << "\n";
  }
  return cert.full_spark() ? kOk : kCertification;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressive multichannel blind deconvolution"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random channel ensemble (JSON)");
  g->add_option("--L", gen.sparsity, "Filter sparsity")->required();
  g->add_option("--Mx", gen.support_bound, "Filter support bound")->required();
  g->add_option("--N", gen.channels, "Number of channels");
  g->add_option("--source", gen.source, "Source model")
      ->check(CLI::IsMember({"gaussians", "linear-complexity", "explicit"}));
  g->add_option("--M", gen.period, "DFT length of Fourier-defined sources (default 2 Mx)");
  g->add_option("--Ms", gen.source_length, "Source length (default M)");
  g->add_option("--Lc", gen.complexity, "Linear complexity");
  g->add_option("--mode", gen.mode, "Convolution mode")->check(CLI::IsMember({"linear", "circular"}));
  g->add_flag("--complex", gen.complex_amplitudes, "Complex filter amplitudes");
  g->add_option("--seed", gen.seed, "Master seed");
  g->add_option("-o,--out", gen.output, "Output file")->required();

  MeasureArgs meas;
  auto* m = app.add_subcommand("measure", "Acquire Fourier or z-domain measurements (CSV)");
  m->add_option("--ensemble", meas.ensemble, "Ensemble JSON")->required();
  m->add_option("--K", meas.count, "Consecutive indices {1..K} per channel");
  m->add_option("--sets", meas.sets_file, "JSON file with one index list per channel");
  m->add_option("--barM", meas.alias_bound, "Alias bound; omega0 = 2 pi / barM");
  m->add_option("--z0", meas.z0, "z-domain base as 're,im'");
  m->add_option("--pk", meas.powers, "z-domain powers")->delimiter(',');
  m->add_flag("--via-kernel", meas.via_kernel, "Acquire through the sum-of-sincs kernel");
  m->add_flag("--allow-uncertified", meas.allow_uncertified, "Accept grids without a full-spark certificate");
  m->add_option("-o,--out", meas.output, "Output CSV")->required();

  RecoverArgs rec;
  auto* r = app.add_subcommand("recover", "Recover filters (and source) from measurements");
  r->add_option("--measurements", rec.measurements, "Measurement CSV")->required();
  r->add_option("--solver", rec.solver, "Solver")
      ->required()
      ->check(CLI::IsMember({"nb-omp", "bdc", "tpi", "exhaustive", "eigen", "pairwise"}));
  r->add_option("--L", rec.sparsity, "Filter sparsity");
  r->add_option("--Mx", rec.support_bound, "Filter support bound")->required();
  r->add_option("--Ms", rec.source_length, "Source length (pairwise)");
  r->add_option("--truth", rec.truth, "Ground-truth ensemble JSON");
  r->add_option("--pair-solver", rec.pair_solver, "Pair solver for pairwise")
      ->check(CLI::IsMember({"tpi", "bdc", "exhaustive"}));
  r->add_option("--max-iter", rec.max_iterations, "Iteration cap for iterative solvers");
  r->add_option("--tol", rec.tolerance, "Stopping tolerance for iterative solvers");
  r->add_flag("--no-refine", rec.no_refine, "Skip the final null-vector refinement on the support");
  r->add_option("--budget", rec.budget, "Support-pair budget for exhaustive search");
  r->add_option("-o,--out", rec.output, "Output JSON");

  std::string config_path, out_dir = "results";
  auto* x = app.add_subcommand("experiment", "Run a phase-transition experiment");
  x->add_option("--config", config_path, "Experiment config JSON")->required();
  x->add_option("--out", out_dir, "Output directory");

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "Certify full spark of a partial Vandermonde operator");
  c->add_option("--M", cert.columns, "Number of columns (barM)")->required();
  c->add_option("--K", cert.count, "Number of consecutive rows");
  c->add_option("--first", cert.first, "First row index for --K");
  c->add_option("--rows", cert.rows, "Explicit row indices")->delimiter(',');
  c->add_option("--omega0", cert.omega0, "Frequency step (default 2 pi / M)");
  c->add_option("--z0", cert.z0, "z-domain base as 're,im'");
  c->add_option("--budget", cert.budget, "Maximum submatrices to check");
  c->add_option("--tolerance", cert.tolerance, "Relative singular value tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kPrecondition;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (m->parsed()) return cmd_measure(meas, out, err);
    if (r->parsed()) return cmd_recover(rec, out);
    if (x->parsed()) return cmd_experiment(config_path, out_dir, out);
    if (c->parsed()) return cmd_certify(cert, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "; try a smaller instance or a larger --budget\n";
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  }
  return kPrecondition;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("cmbd");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cmbd::cli
