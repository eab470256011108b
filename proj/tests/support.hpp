#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "scalefit/fixtures.hpp"
#include "scalefit/io.hpp"
#include "scalefit/landscape.hpp"

namespace scalefit::testing {

inline MeasurementGrid fixture_grid(const FixtureRecord& f, std::optional<MultiplicativeNoise> noise = {}) {
    const auto ms = f.m_levels();
    const auto ns = f.n_levels();
    MeasurementGrid grid = synth_landscape(f.theta_for_counts(), ms, ns, noise);
    if (f.num_classes) grid.num_classes = *f.num_classes;
    return grid;
}

struct GridMinimum {
    double m = 0.0;
    double n = 0.0;
};

// Minimizes m * n over (m, n) with n^-alpha + b m^-beta <= level by exhaustive
// search on a log-spaced resolution x resolution grid. Each stage re-centres a
// narrower grid on the previous stage's minimizer.
inline GridMinimum brute_force_split(const ThetaParams& t, double level, int resolution = 2000, int stages = 5) {
    double log_n_lo = -std::log(level) / t.alpha;
    double log_n_hi = -std::log(1e-3 * level) / t.alpha;
    double log_m_lo = -std::log(level / t.b) / t.beta;
    double log_m_hi = -std::log(1e-3 * level / t.b) / t.beta;
    std::vector<double> data_term(resolution);
    std::vector<double> model_term(resolution);
    GridMinimum best;
    for (int stage = 0; stage < stages; ++stage) {
        const double dn = (log_n_hi - log_n_lo) / (resolution - 1);
        const double dm = (log_m_hi - log_m_lo) / (resolution - 1);
        for (int i = 0; i < resolution; ++i) {
            data_term[i] = std::exp(-t.alpha * (log_n_lo + i * dn));
            model_term[i] = t.b * std::exp(-t.beta * (log_m_lo + i * dm));
        }
        double best_log_product = std::numeric_limits<double>::infinity();
        int best_i = -1;
        int best_j = -1;
        for (int i = 0; i < resolution; ++i) {
            const double remaining = level - data_term[i];
            if (remaining <= 0) continue;
            for (int j = 0; j < resolution; ++j) {
                if (model_term[j] > remaining) continue;
                const double log_product = log_n_lo + i * dn + log_m_lo + j * dm;
                if (log_product < best_log_product) {
                    best_log_product = log_product;
                    best_i = i;
                    best_j = j;
                }
                break;
            }
        }
        if (best_i < 0) break;
        const double log_n = log_n_lo + best_i * dn;
        const double log_m = log_m_lo + best_j * dm;
        best = {std::exp(log_m), std::exp(log_n)};
        const double half_n = std::max(3.0 * std::sqrt(dn), 50.0 * dn);
        const double half_m = std::max(3.0 * std::sqrt(dm), 50.0 * dm);
        log_n_lo = log_n - half_n;
        log_n_hi = log_n + half_n;
        log_m_lo = log_m - half_m;
        log_m_hi = log_m + half_m;
    }
    return best;
}

}  // namespace scalefit::testing
