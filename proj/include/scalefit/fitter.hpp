#pragma once

// Least-squares estimation of the envelope parameters from measured error
// landscapes, and of one-dimensional saturating power laws along a slice.
//
// The objective is the sum of squared signed relative divergences
// ((estimate - actual) / actual)^2 over all measurements, weighted uniformly.
// Free parameters are optimized as logarithms, which keeps every returned
// value strictly positive; c_inf is floored at 1e-14 in the optimizer's
// normalized units. Restarts draw log-uniform initial points from
// (seed, restart index) alone, so results do not depend on thread count.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scalefit/landscape.hpp"

namespace scalefit {

struct LogRange {
    double lo = 1.0;
    double hi = 1.0;
};

/// Log-uniform sampling intervals for restart initialization. Values refer to
/// sizes normalized by the largest model and data size in the fitted grid.
struct InitRanges {
    LogRange alpha{0.1, 2.0};
    LogRange beta{0.1, 2.0};
    LogRange b{1e-4, 10.0};
    LogRange c_inf{1e-12, 10.0};
    LogRange eta{0.1, 100.0};
    LogRange eps0{1.0, 20.0};
};

struct FitConfig {
    int restarts = 100;
    std::uint64_t seed = 0;
    int max_iterations = 2000;
    double objective_tolerance = 1e-12;
    double step_tolerance = 1e-10;
    InitRanges init_ranges;
    unsigned threads = 0;  ///< 0: $SCALEFIT_THREADS or hardware concurrency

    /// Throws DomainError on restarts < 1, max_iterations < 1 or
    /// non-positive tolerances.
    void validate() const;
};

/// Whether eps0 is a known constant (balanced classification) or estimated.
class Eps0Mode {
public:
    static Eps0Mode fixed(double value);
    static Eps0Mode free();

    bool is_fixed() const noexcept { return fixed_; }
    double value() const noexcept { return value_; }
    std::size_t free_parameter_count() const noexcept { return fixed_ ? 5 : 6; }

private:
    Eps0Mode(bool fixed, double value) : fixed_(fixed), value_(value) {}
    bool fixed_;
    double value_;
};

/// (K - 1) / K for top-1 grids that declare K classes; free otherwise.
Eps0Mode default_eps0_mode(const MeasurementGrid& grid);

struct FitResult {
    ThetaParams theta;  ///< in the grid's own size units
    double objective = 0.0;
    std::vector<double> restart_objectives;
    std::size_t winning_restart = 0;
    std::vector<int> iterations_used;
    std::uint64_t seed = 0;

    /// The same fit expressed for sizes m / m_ref, n / n_ref.
    ThetaParams theta_normalized;
    double m_ref = 1.0;
    double n_ref = 1.0;
};

/// Sum of squared divergences over the grid.
double fit_objective(const ThetaParams& theta, const MeasurementGrid& grid);

/// Throws InsufficientData unless the grid has more points than free
/// parameters and at least two distinct values along each axis.
void check_fit_preconditions(const MeasurementGrid& grid, const Eps0Mode& mode);

FitResult fit_theta(const MeasurementGrid& grid, const FitConfig& config, const Eps0Mode& mode);

/// Unconstrained surrogate layout: log of [alpha, beta, b, c_inf, eta] and,
/// when eps0 is free, log eps0 last.
std::vector<double> to_free_parameters(const ThetaParams& theta, const Eps0Mode& mode);
ThetaParams from_free_parameters(std::span<const double> free, const Eps0Mode& mode);

struct ObjectiveGradient {
    double objective = 0.0;
    std::vector<double> gradient;
};

/// Objective and its analytic gradient with respect to the log parameters.
/// Non-finite values are returned as computed.
ObjectiveGradient objective_and_gradient(std::span<const double> theta_free, const MeasurementGrid& grid,
                                         const Eps0Mode& mode);

struct SlicePoint {
    double size = 1.0;
    double eps = 1.0;
};

/// Fits coeff * size^-exponent + floor by the same relative least squares.
/// Needs at least four distinct sizes.
SliceParams fit_slice(std::span<const SlicePoint> points, SliceAxis axis, const FitConfig& config);

}  // namespace scalefit
