#include "cmbd/experiments/config.hpp"

#include <nlohmann/json.hpp>
#include <set>

#include "cmbd/errors.hpp"

namespace cmbd {

using nlohmann::json;

namespace {

constexpr SolverId kSolvers[] = {SolverId::nb_omp, SolverId::bdc,   SolverId::tpi,
                                 SolverId::exhaustive, SolverId::eigen, SolverId::pairwise};

json sweep_json(const Sweep& s) {
  if (!s.values.empty()) return s.values;
  return {{"start", s.start}, {"stop", s.stop}, {"step", s.step}};
}

Sweep sweep_from(const json& j) {
  if (j.is_number_integer()) return Sweep::single(j.get<int>());
  if (j.is_array()) return Sweep::list(j.get<std::vector<int>>());
  Sweep s;
  s.start = j.at("start").get<int>();
  s.stop = j.value("stop", s.start);
  s.step = j.value("step", 1);
  return s;
}

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& name, const Enum (&all)[N], const char* what) {
  for (const Enum e : all) {
    if (to_string(e) == name) return e;
  }
  throw FormatError(std::string("config: unknown ") + what + " '" + name + "'");
}

}  // namespace

std::string to_string(SolverId id) {
  switch (id) {
    case SolverId::nb_omp: return "nb_omp";
    case SolverId::bdc: return "bdc";
    case SolverId::tpi: return "tpi";
    case SolverId::exhaustive: return "exhaustive";
    case SolverId::eigen: return "eigen";
    case SolverId::pairwise: return "pairwise";
  }
  return "unknown";
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::sparse: return "sparse";
    case ExperimentKind::fir: return "fir";
    case ExperimentKind::pairwise: return "pairwise";
  }
  return "unknown";
}

std::string to_string(SourceModel model) {
  switch (model) {
    case SourceModel::gaussian_mixture: return "gaussian_mixture";
    case SourceModel::linear_complexity: return "linear_complexity";
    case SourceModel::explicit_random: return "explicit_random";
  }
  return "unknown";
}

SolverId solver_from_string(std::string_view name) {
  std::string s(name);
  for (char& c : s) c = c == '-' ? '_' : c;
  return enum_from(s, kSolvers, "solver");
}

std::vector<int> Sweep::expand() const {
  if (!values.empty()) return values;
  if (step < 1) throw PreconditionError("sweep: step must be positive");
  std::vector<int> out;
  for (int v = start; v <= stop; v += step) out.push_back(v);
  return out;
}

int ExperimentConfig::resolved_support_bound(int l) const {
  return support_bound > 0 ? support_bound : 2 * l * l;
}

int ExperimentConfig::resolved_period(int l) const {
  return period > 0 ? period : 2 * resolved_support_bound(l);
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw PreconditionError("config: trials must be at least 1");
  if (!(threshold_db < 0.0)) throw PreconditionError("config: threshold_db must be negative");
  if (solvers.empty()) throw PreconditionError("config: no solver selected");
  if (channels < 2) throw PreconditionError("config: at least two channels are required");
  for (const Sweep* s : {&sparsity, &measurements, &complexity}) {
    if (s->expand().empty()) throw PreconditionError("config: empty sweep");
  }
  for (const int l : sparsity.expand()) {
    if (kind == ExperimentKind::fir) break;
    if (l < 1) throw PreconditionError("config: L must be positive");
    if (l > resolved_support_bound(l)) throw PreconditionError("config: L exceeds M_x");
  }
  for (const int k : measurements.expand()) {
    if (k < 1) throw PreconditionError("config: K must be positive");
  }
  for (const int lc : complexity.expand()) {
    if (lc < 1) throw PreconditionError("config: L_c must be positive");
  }
  if (kind == ExperimentKind::fir) {
    for (const SolverId s : solvers) {
      if (s != SolverId::eigen) throw PreconditionError("config: the fir kind uses the eigen solver");
    }
    if (support_bound < 1) throw PreconditionError("config: the fir kind needs an explicit M_x");
  }
  if (kind == ExperimentKind::pairwise) {
    for (const SolverId s : solvers) {
      if (s != SolverId::tpi && s != SolverId::bdc && s != SolverId::exhaustive) {
        throw PreconditionError("config: pairwise pairs are solved by tpi, bdc or exhaustive");
      }
    }
    if (resolved_pairs() < 1 || 2 * resolved_pairs() > channels) {
      throw PreconditionError("config: pair count does not fit the channel count");
    }
    if (source == SourceModel::gaussian_mixture) {
      throw PreconditionError("config: the pairwise kind needs a finite-length source model");
    }
    if (source_length < 1) throw PreconditionError("config: the pairwise kind needs source_length");
  }
  if (kind == ExperimentKind::sparse) {
    for (const SolverId s : solvers) {
      if (s == SolverId::pairwise) throw PreconditionError("config: use the pairwise kind");
    }
  }
}

ExperimentConfig config_from_json(std::string_view text) {
  static const std::set<std::string> known = {
      "id", "kind", "solvers", "L", "Mx", "M", "N", "pairs", "mode", "source", "Ms", "K", "Lc",
      "complex_amplitudes", "trials", "seed", "threshold_db", "nonvanishing_tolerance",
      "max_resamples", "tpi", "bdc", "exhaustive"};
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw FormatError("config: top level must be an object");
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) throw FormatError("config: unknown key '" + key + "'");
    }
    c.id = j.value("id", c.id);
    if (j.contains("kind")) {
      constexpr ExperimentKind kinds[] = {ExperimentKind::sparse, ExperimentKind::fir,
                                          ExperimentKind::pairwise};
      c.kind = enum_from(j["kind"].get<std::string>(), kinds, "kind");
    }
    if (j.contains("solvers")) {
      c.solvers.clear();
      for (const auto& s : j["solvers"]) c.solvers.push_back(solver_from_string(s.get<std::string>()));
    }
    if (j.contains("L")) c.sparsity = sweep_from(j["L"]);
    c.support_bound = j.value("Mx", c.support_bound);
    c.period = j.value("M", c.period);
    c.channels = j.value("N", c.channels);
    c.pairs = j.value("pairs", c.pairs);
    if (j.contains("mode")) {
      const auto m = j["mode"].get<std::string>();
      if (m != "linear" && m != "circular") throw FormatError("config: unknown mode '" + m + "'");
      c.mode = m == "linear" ? ConvolutionMode::linear : ConvolutionMode::circular;
    }
    if (j.contains("source")) {
      constexpr SourceModel models[] = {SourceModel::gaussian_mixture, SourceModel::linear_complexity,
                                        SourceModel::explicit_random};
      c.source = enum_from(j["source"].get<std::string>(), models, "source model");
    }
    c.source_length = j.value("Ms", c.source_length);
    if (j.contains("K")) c.measurements = sweep_from(j["K"]);
    if (j.contains("Lc")) c.complexity = sweep_from(j["Lc"]);
    c.complex_amplitudes = j.value("complex_amplitudes", c.complex_amplitudes);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.threshold_db = j.value("threshold_db", c.threshold_db);
    c.nonvanishing_tolerance = j.value("nonvanishing_tolerance", c.nonvanishing_tolerance);
    c.max_resamples = j.value("max_resamples", c.max_resamples);
    if (j.contains("tpi")) {
      const auto& t = j["tpi"];
      if (t.contains("beta")) c.tpi.beta = t["beta"].get<double>();
      c.tpi.max_iterations = t.value("max_iterations", c.tpi.max_iterations);
      c.tpi.tolerance = t.value("tolerance", c.tpi.tolerance);
      c.tpi.refine_support = t.value("refine_support", c.tpi.refine_support);
    }
    if (j.contains("bdc")) {
      const auto& b = j["bdc"];
      c.bdc.max_iterations = b.value("max_iterations", c.bdc.max_iterations);
      c.bdc.tolerance = b.value("tolerance", c.bdc.tolerance);
      c.bdc.refine_support = b.value("refine_support", c.bdc.refine_support);
    }
    if (j.contains("exhaustive")) {
      const auto& e = j["exhaustive"];
      c.exhaustive.budget = e.value("budget", c.exhaustive.budget);
      c.exhaustive.null_tolerance = e.value("null_tolerance", c.exhaustive.null_tolerance);
      c.exhaustive.orbit_tolerance_db = e.value("orbit_tolerance_db", c.exhaustive.orbit_tolerance_db);
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json solvers = json::array();
  for (const SolverId s : c.solvers) solvers.push_back(to_string(s));
  json tpi = {{"max_iterations", c.tpi.max_iterations},
              {"tolerance", c.tpi.tolerance},
              {"refine_support", c.tpi.refine_support}};
  if (c.tpi.beta) tpi["beta"] = *c.tpi.beta;
  const json j = {
      {"id", c.id},
      {"kind", to_string(c.kind)},
      {"solvers", solvers},
      {"L", sweep_json(c.sparsity)},
      {"Mx", c.support_bound},
      {"M", c.period},
      {"N", c.channels},
      {"pairs", c.pairs},
      {"mode", c.mode == ConvolutionMode::linear ? "linear" : "circular"},
      {"source", to_string(c.source)},
      {"Ms", c.source_length},
      {"K", sweep_json(c.measurements)},
      {"Lc", sweep_json(c.complexity)},
      {"complex_amplitudes", c.complex_amplitudes},
      {"trials", c.trials},
      {"seed", c.seed},
      {"threshold_db", c.threshold_db},
      {"nonvanishing_tolerance", c.nonvanishing_tolerance},
      {"max_resamples", c.max_resamples},
      {"tpi", tpi},
      {"bdc",
       {{"max_iterations", c.bdc.max_iterations},
        {"tolerance", c.bdc.tolerance},
        {"refine_support", c.bdc.refine_support}}},
      {"exhaustive",
       {{"budget", c.exhaustive.budget},
        {"null_tolerance", c.exhaustive.null_tolerance},
        {"orbit_tolerance_db", c.exhaustive.orbit_tolerance_db}}}};
  return j.dump(2) + "\n";
}

}  // namespace cmbd
