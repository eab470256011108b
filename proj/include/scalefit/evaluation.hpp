#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scalefit/fitter.hpp"
#include "scalefit/landscape.hpp"

namespace scalefit {

struct PointDivergence {
    double m = 0.0;
    double n = 0.0;
    double eps_actual = 0.0;
    double eps_estimated = 0.0;
    double delta = 0.0;
};

/// Mean and population standard deviation of the signed divergence.
struct DivergenceStats {
    double mu = 0.0;
    double sigma = 0.0;
    double mean_abs = 0.0;
    std::optional<double> fold_mu_std;  ///< std of per-fold means, cross-validation only
    std::vector<PointDivergence> per_point;
};

/// Summary statistics over an already evaluated list of divergences.
DivergenceStats summarize(std::vector<PointDivergence> per_point);

/// Evaluates a fixed theta on every point; no fitting.
DivergenceStats divergence_stats(const ThetaParams& theta, const MeasurementGrid& grid);

/// Fold index (0-based) of every point of the canonically sorted grid:
/// a seeded Fisher-Yates shuffle, cut into contiguous chunks whose sizes
/// differ by at most one.
std::vector<std::size_t> assign_folds(std::size_t points, std::size_t folds, std::uint64_t seed);

/// k-fold cross-validation: every fold is predicted by a theta fitted on the
/// remaining points. Per-point results are pooled in canonical (m, n) order.
DivergenceStats cross_validate(const MeasurementGrid& grid, std::size_t folds, const FitConfig& config,
                               const Eps0Mode& mode);

}  // namespace scalefit
