#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cmbd/measurement.hpp"
#include "cmbd/recovery/result.hpp"
#include "cmbd/signals.hpp"

namespace cmbd {

// File formats
//
// Ensemble (JSON):
//   {"mode": "linear"|"circular", "period": M,
//    "source": {"kind": "explicit", "samples": [[re, im], ...]}
//            | {"kind": "linear_complexity", "coefficients": [[re, im], ...],
//               "roots": [[re, im], ...], "length": M_s}
//            | {"kind": "fourier_gaussian_mixture", "grid_length": M,
//               "pulses": [{"amplitude": a, "center": c, "variance": v}, ...]},
//    "filters": [{"sparsity": L, "support_bound": M_x, "support": [...],
//                 "amplitudes": [[re, im], ...]}, ...]}
//
// Measurements (CSV): a first line "# " followed by a JSON header with
// kind, omega0, z0, alias_bound, mode, certified and channel_sets, then the
// column line "channel,k,re,im" and one row per sample. Reals use 17
// significant digits.
//
// Recovery result (JSON): filters as lists of [index, re, im] triples, the
// source spectrum as [k, re, im] triples, the source time samples with their
// offset, and iterations, converged, status and objectives (null when
// undefined).

/// %.17g formatting.
std::string format_real(double value);

std::string ensemble_to_json(const ChannelEnsemble& ensemble);
/// Throws FormatError on malformed input; the result is validated.
ChannelEnsemble ensemble_from_json(std::string_view text);

void write_measurements_csv(std::ostream& out, const MeasurementSet& measurements);
MeasurementSet read_measurements_csv(std::istream& in);

std::string recovery_to_json(const RecoveryResult& result);
RecoveryResult recovery_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cmbd
