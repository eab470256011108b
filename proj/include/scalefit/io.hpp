#pragma once

// Measurement CSV files and synthetic landscapes.
//
// File format: a header line `m,n,error`, then one row per configuration.
// Lines starting with '#' are comments; two of them carry grid metadata:
//   # metric: top1_error | cross_entropy
//   # classes: K
// Sizes must be whole numbers >= 1 (decimal or scientific notation); errors
// must be > 0. Row order is irrelevant: grids are returned sorted by (m, n).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "scalefit/landscape.hpp"

namespace scalefit {

MeasurementGrid load_measurements(std::istream& in);
MeasurementGrid load_measurements(const std::filesystem::path& path);

void write_measurements(std::ostream& out, const MeasurementGrid& grid);
std::string measurements_to_csv(const MeasurementGrid& grid);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

struct MultiplicativeNoise {
    double amplitude = 0.0;  ///< p in [0, 1): errors are scaled by (1 + u), u ~ U[-p, p]
    std::uint64_t seed = 0;
};

/// Full Cartesian grid of envelope values, optionally perturbed. Noise is
/// drawn in canonical (m, n) order from a seeded stream.
MeasurementGrid synth_landscape(const ThetaParams& theta, std::span<const double> m_levels,
                                std::span<const double> n_levels, std::optional<MultiplicativeNoise> noise = {});

std::string_view to_string(MetricKind kind);
MetricKind metric_kind_from_string(std::string_view text);

}  // namespace scalefit
