#pragma once

// Published fitted envelope parameters for nine benchmark tasks, with the
// scale ladders they were measured on. The parameters refer to sizes given as
// fractions of the base model size M and the full dataset size N;
// `theta_for_counts` converts them for raw parameter/sample counts.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scalefit/landscape.hpp"

namespace scalefit {

struct FixtureRecord {
    std::string_view name;   ///< lookup key, e.g. "imagenet"
    std::string_view label;  ///< dataset name
    MetricKind metric;
    std::optional<int> num_classes;  ///< set for top-1 tasks; eps0 is then (K - 1) / K

    // Parameter values exactly as tabulated. eps0 is tabulated only for
    // cross-entropy tasks.
    std::string_view alpha;
    std::string_view beta;
    std::string_view b;
    std::string_view c_inf;
    std::string_view eta;
    std::string_view eps0;

    double full_m;  ///< base model size M
    double full_n;  ///< full dataset size N
    int m_k_min;    ///< model ladder M * 4^-k for k in [m_k_min, m_k_max]
    int m_k_max;
    int n_k_min;    ///< data ladder N * 2^-k for k in [n_k_min, n_k_max]
    int n_k_max;

    /// Parameters for sizes as fractions of (full_m, full_n).
    ThetaParams theta() const;
    /// Parameters for raw counts.
    ThetaParams theta_for_counts() const;
    /// Ascending ladders rounded to whole counts.
    std::vector<double> m_levels() const;
    std::vector<double> n_levels() const;
};

std::span<const FixtureRecord> fixtures();

/// Throws ValidationError for unknown names.
const FixtureRecord& fixture(std::string_view name);

/// 64-bit FNV-1a over "name:alpha,beta,b,c_inf,eta,eps0;" for every record.
std::uint64_t fixture_checksum();

}  // namespace scalefit
