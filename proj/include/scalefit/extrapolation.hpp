#pragma once

// Fitting on small configurations and predicting larger unseen ones.
//
// A cut (m_i, n_j) selects the training rectangle {m <= m_i, n <= n_j}. The
// targets are either the strictly larger corner {m > m_i, n > n_j}
// (strict_and) or everything outside the rectangle (complement).

#include <optional>
#include <vector>

#include "scalefit/evaluation.hpp"
#include "scalefit/fitter.hpp"

namespace scalefit {

enum class TargetRule { strict_and, complement };

enum class CutStatus {
    ok,
    insufficient_data,  ///< training rectangle too small to fit; no fit performed
    empty_target,       ///< no points to predict; fitted when the rectangle allows it
};

struct Cut {
    double m = 0.0;
    double n = 0.0;
};

/// Training spread max(eps) / min(eps) below this marks a low-signal cut.
inline constexpr double kLowSignalSpread = 1.05;

struct ExtrapolationReport {
    Cut cut;
    std::size_t m_index = 0;  ///< level indices of the cut, sweeps only
    std::size_t n_index = 0;
    TargetRule target_rule = TargetRule::strict_and;
    CutStatus status = CutStatus::ok;
    bool low_signal = false;
    std::vector<PointDivergence> train_points;   ///< with in-sample divergences when fitted
    std::vector<PointDivergence> target_points;  ///< with extrapolation divergences when fitted
    std::optional<DivergenceStats> stats;        ///< over target points
    std::optional<FitResult> fit;
};

struct GridSplit {
    MeasurementGrid train;
    MeasurementGrid target;
};

GridSplit split_at_cut(const MeasurementGrid& grid, Cut cut, TargetRule rule);

/// Throws EmptyTarget when the rule selects nothing and InsufficientData when
/// the training rectangle cannot be fitted.
ExtrapolationReport extrapolate_once(const MeasurementGrid& grid, Cut cut, const FitConfig& config,
                                     const Eps0Mode& mode, TargetRule rule = TargetRule::strict_and);

/// One report per cut whose rectangle spans at least two model and two data
/// levels, ordered by (m level, n level). Cuts that cannot be fitted or have
/// no targets are reported with the corresponding status instead of
/// throwing. Throws NotAGrid unless the points form a full product of levels.
std::vector<ExtrapolationReport> extrapolation_sweep(const MeasurementGrid& grid, const FitConfig& config,
                                                     const Eps0Mode& mode, TargetRule rule = TargetRule::strict_and);

/// Throws NotAGrid unless every (m level, n level) pair is present exactly once.
void require_full_grid(const MeasurementGrid& grid);

}  // namespace scalefit
