#pragma once

// Closed-form design answers derived from the envelope.
//
// In reduced-form space the constant-error contour at level c is
//   c = n^-alpha + b * m^-beta        (c_inf excluded)
// and the contribution threshold T is the ratio of the dominant term to the
// subordinate one. All answers carry the relative residual of their defining
// equation, evaluated independently of the closed form that produced them.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scalefit/landscape.hpp"

namespace scalefit {

enum class AnswerKind { size, contour, ratio_point, reduced_level };

struct ContourPoint {
    double m = 0.0;
    double n = 0.0;
};

struct DesignAnswer {
    AnswerKind kind = AnswerKind::size;
    std::optional<double> m;
    std::optional<double> n;
    std::optional<double> reduced_level;  ///< invert_envelope only
    std::vector<ContourPoint> contour;    ///< contour sweeps only
    double residual = 0.0;                ///< relative residual of the defining equation
};

/// m_max = (b T)^(1/beta) * n_lim^(alpha/beta), so that
/// n_lim^-alpha / (b m_max^-beta) = T.
DesignAnswer max_useful_model(const ThetaParams& theta, double n_lim, double threshold);

/// n_max = (T / b)^(1/alpha) * m_lim^(beta/alpha), so that
/// b m_lim^-beta / n_max^-alpha = T.
DesignAnswer max_useful_data(const ThetaParams& theta, double m_lim, double threshold);

/// Reduced-form value t* with eps0 t* / sqrt(t*^2 + eta^2) = target_eps.
/// Throws OutOfRange unless envelope_floor(theta) < target_eps and
/// target_eps / eps0 < 1 - 1e-12.
DesignAnswer invert_envelope(const ThetaParams& theta, double target_eps);

/// Contour level for a raw target error: invert_envelope minus c_inf.
double contour_level_for_error(const ThetaParams& theta, double target_eps);

/// Model size on the contour for a given data size. Throws Infeasible when
/// n^-alpha >= level.
DesignAnswer contour_model_size(const ThetaParams& theta, double level, double n);

/// Data size on the contour for a given model size. Throws Infeasible when
/// b m^-beta >= level.
DesignAnswer contour_data_size(const ThetaParams& theta, double level, double m);

/// `samples` contour points log-spaced in n, between the sizes where the
/// data term carries 99.9% and 0.1% of the level.
DesignAnswer contour_sweep(const ThetaParams& theta, double level, std::size_t samples);

/// The (m, n) on the contour minimizing m * n, where
/// (b beta / alpha) n^alpha / m^beta = 1.
DesignAnswer compute_optimal_split(const ThetaParams& theta, double level);

/// Nearest rung of an ascending or unordered ladder (ties to the smaller).
double round_to_ladder(double value, std::span<const double> ladder);

}  // namespace scalefit
