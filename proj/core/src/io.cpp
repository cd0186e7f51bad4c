#include "cmbd/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "cmbd/errors.hpp"

namespace cmbd {

using nlohmann::json;

namespace {

json complex_json(Complex v) { return json::array({v.real(), v.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_list(std::span<const Complex> values) {
  json out = json::array();
  for (const Complex& v : values) out.push_back(complex_json(v));
  return out;
}

std::vector<Complex> complex_list_from(const json& j) {
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from(e));
  return out;
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double real_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

const char* mode_name(ConvolutionMode mode) {
  return mode == ConvolutionMode::circular ? "circular" : "linear";
}

ConvolutionMode mode_from(const std::string& s) {
  if (s == "linear") return ConvolutionMode::linear;
  if (s == "circular") return ConvolutionMode::circular;
  throw FormatError("unknown convolution mode '" + s + "'");
}

RecoveryStatus status_from(const std::string& s) {
  for (auto st : {RecoveryStatus::ok, RecoveryStatus::not_converged, RecoveryStatus::degenerate,
                  RecoveryStatus::non_unique, RecoveryStatus::not_coprime,
                  RecoveryStatus::alignment_failure}) {
    if (to_string(st) == s) return st;
  }
  throw FormatError("unknown recovery status '" + s + "'");
}

json source_json(const SourceSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitSamples>) {
          return {{"kind", "explicit"}, {"samples", complex_list(s.samples)}};
        } else if constexpr (std::is_same_v<T, LinearComplexity>) {
          return {{"kind", "linear_complexity"},
                  {"coefficients", complex_list(s.coefficients)},
                  {"roots", complex_list(s.roots)},
                  {"length", s.length}};
        } else {
          json pulses = json::array();
          for (const auto& p : s.pulses) {
            pulses.push_back({{"amplitude", p.amplitude}, {"center", p.center}, {"variance", p.variance}});
          }
          return {{"kind", "fourier_gaussian_mixture"}, {"grid_length", s.grid_length}, {"pulses", pulses}};
        }
      },
      spec);
}

SourceSpec source_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") return ExplicitSamples{complex_list_from(j.at("samples"))};
  if (kind == "linear_complexity") {
    return LinearComplexity{complex_list_from(j.at("coefficients")), complex_list_from(j.at("roots")),
                            j.at("length").get<int>()};
  }
  if (kind == "fourier_gaussian_mixture") {
    FourierGaussianMixture f;
    f.grid_length = j.at("grid_length").get<int>();
    for (const auto& p : j.at("pulses")) {
      f.pulses.push_back({p.at("amplitude").get<double>(), p.at("center").get<double>(),
                          p.at("variance").get<double>()});
    }
    return f;
  }
  throw FormatError("unknown source kind '" + kind + "'");
}

template <typename F>
auto parse_guard(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string ensemble_to_json(const ChannelEnsemble& ensemble) {
  json filters = json::array();
  for (const auto& f : ensemble.filters) {
    filters.push_back({{"sparsity", f.sparsity},
                       {"support_bound", f.support_bound},
                       {"support", f.support},
                       {"amplitudes", complex_list(f.amplitudes)}});
  }
  const json j = {{"mode", mode_name(ensemble.mode)},
                  {"period", ensemble.period},
                  {"source", source_json(ensemble.source)},
                  {"filters", filters}};
  return j.dump(2) + "\n";
}

ChannelEnsemble ensemble_from_json(std::string_view text) {
  ChannelEnsemble e = parse_guard([&] {
    const json j = json::parse(text);
    ChannelEnsemble out;
    out.mode = mode_from(j.at("mode").get<std::string>());
    out.period = j.value("period", 0);
    out.source = source_from(j.at("source"));
    for (const auto& f : j.at("filters")) {
      SparseFilterSpec spec;
      spec.sparsity = f.at("sparsity").get<int>();
      spec.support_bound = f.at("support_bound").get<int>();
      spec.support = f.at("support").get<std::vector<int>>();
      spec.amplitudes = complex_list_from(f.at("amplitudes"));
      out.filters.push_back(std::move(spec));
    }
    return out;
  });
  e.validate();
  return e;
}

void write_measurements_csv(std::ostream& out, const MeasurementSet& m) {
  const FrequencyGrid& g = m.grid;
  json header = {{"kind", g.kind == GridKind::fourier ? "fourier" : "z_domain"},
                 {"omega0", g.omega0},
                 {"z0", complex_json(g.z0)},
                 {"alias_bound", g.alias_bound},
                 {"mode", mode_name(m.mode)},
                 {"certified", g.certified},
                 {"channel_sets", g.channel_sets}};
  out << "# " << header.dump() << "\n";
  out << "channel,k,re,im\n";
  for (std::size_t n = 0; n < m.channels.size(); ++n) {
    const auto& ks = g.channel_sets[n];
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const Complex v = m.channels[n](static_cast<Eigen::Index>(i));
      out << n << ',' << ks[i] << ',' << format_real(v.real()) << ',' << format_real(v.imag()) << '\n';
    }
  }
}

namespace {

// strtod accepts subnormals, which std::stod rejects as out of range.
double parse_real(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw FormatError("bad number '" + text + "'");
  return v;
}

}  // namespace

MeasurementSet read_measurements_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw FormatError("measurements: missing '# {header}' line");
  }
  MeasurementSet m = parse_guard([&] {
    const json h = json::parse(line.substr(2));
    MeasurementSet out;
    const std::string kind = h.at("kind").get<std::string>();
    if (kind != "fourier" && kind != "z_domain") throw FormatError("measurements: unknown grid kind");
    out.grid.kind = kind == "fourier" ? GridKind::fourier : GridKind::z_domain;
    out.grid.omega0 = h.at("omega0").get<double>();
    out.grid.z0 = complex_from(h.at("z0"));
    out.grid.alias_bound = h.at("alias_bound").get<int>();
    out.grid.certified = h.value("certified", false);
    out.grid.channel_sets = h.at("channel_sets").get<std::vector<std::vector<int>>>();
    out.mode = mode_from(h.at("mode").get<std::string>());
    return out;
  });
  if (!std::getline(in, line) || line != "channel,k,re,im") {
    throw FormatError("measurements: missing column line 'channel,k,re,im'");
  }
  std::map<std::pair<std::size_t, int>, Complex> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string c, k, re, im;
    if (!std::getline(ls, c, ',') || !std::getline(ls, k, ',') || !std::getline(ls, re, ',') ||
        !std::getline(ls, im)) {
      throw FormatError("measurements: malformed row '" + line + "'");
    }
    std::pair<std::size_t, int> key;
    Complex value;
    try {
      key = {std::stoul(c), std::stoi(k)};
      value = {parse_real(re), parse_real(im)};
    } catch (const std::exception&) {
      throw FormatError("measurements: malformed row '" + line + "'");
    }
    if (!rows.emplace(key, value).second) {
      throw FormatError("measurements: duplicate row '" + line + "'");
    }
  }
  std::size_t expected = 0;
  for (const auto& ks : m.grid.channel_sets) expected += ks.size();
  if (rows.size() != expected) {
    throw FormatError("measurements: rows do not match the channel sets in the header");
  }
  for (std::size_t n = 0; n < m.grid.channel_sets.size(); ++n) {
    const auto& ks = m.grid.channel_sets[n];
    CVector y(static_cast<Eigen::Index>(ks.size()));
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto it = rows.find({n, ks[i]});
      if (it == rows.end()) {
        throw FormatError("measurements: missing sample channel " + std::to_string(n) + ", k " +
                          std::to_string(ks[i]));
      }
      y(static_cast<Eigen::Index>(i)) = it->second;
    }
    m.channels.push_back(std::move(y));
  }
  return m;
}

std::string recovery_to_json(const RecoveryResult& r) {
  json filters = json::array();
  for (const auto& f : r.filters) {
    json taps = json::array();
    for (std::ptrdiff_t m = f.offset(); m < f.end(); ++m) {
      if (f[m] != Complex{}) taps.push_back(json::array({m, f[m].real(), f[m].imag()}));
    }
    filters.push_back(taps);
  }
  json j = {{"filters", filters},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"status", to_string(r.status)},
            {"initial_objective", real_or_null(r.initial_objective)},
            {"final_objective", real_or_null(r.final_objective)}};
  if (r.source_spectrum) {
    json s = json::array();
    for (std::size_t i = 0; i < r.source_spectrum->ks.size(); ++i) {
      const Complex v = r.source_spectrum->values(static_cast<Eigen::Index>(i));
      s.push_back(json::array({r.source_spectrum->ks[i], v.real(), v.imag()}));
    }
    j["source_spectrum"] = s;
  }
  if (r.source_time) {
    j["source_time"] = {{"offset", r.source_time->offset()},
                        {"samples", complex_list(r.source_time->values())}};
  }
  return j.dump(2) + "\n";
}

RecoveryResult recovery_from_json(std::string_view text) {
  return parse_guard([&] {
    const json j = json::parse(text);
    RecoveryResult r;
    for (const auto& taps : j.at("filters")) {
      std::ptrdiff_t lo = 0, hi = 0;
      bool first = true;
      for (const auto& t : taps) {
        const auto m = t.at(0).get<std::ptrdiff_t>();
        lo = first ? m : std::min(lo, m);
        hi = first ? m + 1 : std::max(hi, m + 1);
        first = false;
      }
      std::vector<Complex> dense(static_cast<std::size_t>(hi - lo));
      for (const auto& t : taps) {
        dense[static_cast<std::size_t>(t.at(0).get<std::ptrdiff_t>() - lo)] = {t.at(1).get<double>(),
                                                                                t.at(2).get<double>()};
      }
      r.filters.emplace_back(std::move(dense), lo);
    }
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.status = status_from(j.at("status").get<std::string>());
    r.initial_objective = real_from(j.at("initial_objective"));
    r.final_objective = real_from(j.at("final_objective"));
    if (j.contains("source_spectrum")) {
      SpectrumSamples s;
      const auto& arr = j.at("source_spectrum");
      s.values.resize(static_cast<Eigen::Index>(arr.size()));
      Eigen::Index i = 0;
      for (const auto& e : arr) {
        s.ks.push_back(e.at(0).get<int>());
        s.values(i++) = {e.at(1).get<double>(), e.at(2).get<double>()};
      }
      r.source_spectrum = std::move(s);
    }
    if (j.contains("source_time")) {
      const auto& st = j.at("source_time");
      r.source_time = ComplexSequence(complex_list_from(st.at("samples")), st.at("offset").get<std::ptrdiff_t>());
    }
    return r;
  });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace cmbd
