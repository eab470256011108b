#pragma once

// Functional forms of the joint error landscape over model size m and data
// size n. Everything here is a pure function of its arguments.
//
//   reduced form   t(m, n) = n^-alpha + b * m^-beta + c_inf
//   envelope       e(m, n) = eps0 * t / sqrt(t^2 + eta^2)
//
// The envelope is the modulus |t / (t - i*eta)| written in real arithmetic.

#include <cstdint>
#include <optional>
#include <vector>

namespace scalefit {

struct ThetaParams {
    double alpha = 0.0;  ///< data-scaling exponent, >= 0
    double beta = 0.0;   ///< model-scaling exponent, >= 0
    double b = 1.0;      ///< model-term coefficient, > 0 (data-term coefficient is fixed at 1)
    double c_inf = 0.0;  ///< asymptote of the reduced form, >= 0
    double eta = 1.0;    ///< pole location, > 0
    double eps0 = 1.0;   ///< random-guess error level, > 0
    bool eps0_fixed = true;

    bool operator==(const ThetaParams&) const = default;
};

/// Throws DomainError when any ThetaParams invariant is violated.
void validate(const ThetaParams& theta);

/// Exact reparametrization for sizes measured in other units: returns theta'
/// such that envelope(theta', m, n) == envelope(theta, m / m_ref, n / n_ref)
/// for all m, n. The data-term coefficient stays 1.
ThetaParams rescale_sizes(const ThetaParams& theta, double m_ref, double n_ref);

struct Measurement {
    double m = 1.0;    ///< model size (parameter count)
    double n = 1.0;    ///< data size (samples or words)
    double eps = 1.0;  ///< observed error, > 0

    bool operator==(const Measurement&) const = default;
};

enum class MetricKind { top1_error, cross_entropy };

struct MeasurementGrid {
    std::vector<Measurement> points;
    MetricKind metric_kind = MetricKind::cross_entropy;
    std::optional<std::int64_t> num_classes;

    std::size_t size() const noexcept { return points.size(); }
};

/// Rejects empty grids, sizes < 1, non-positive or non-finite errors and
/// duplicate (m, n) pairs.
void validate(const MeasurementGrid& grid);

/// Sorts points by (m, n) in place.
void canonical_sort(MeasurementGrid& grid);

std::vector<double> distinct_m(const MeasurementGrid& grid);
std::vector<double> distinct_n(const MeasurementGrid& grid);

enum class SliceAxis { model_axis, data_axis };

/// One-dimensional saturating power law coeff * size^-exponent + floor,
/// along the model axis at fixed n or the data axis at fixed m.
struct SliceParams {
    SliceAxis axis = SliceAxis::model_axis;
    double coeff = 1.0;
    double exponent = 0.0;
    double floor = 0.0;
};

/// size^-exponent computed as exp(-exponent * ln size).
double inverse_power(double size, double exponent);

double eval_tilde(const ThetaParams& theta, double m, double n);
double eval_envelope(const ThetaParams& theta, double m, double n);

/// Envelope as a function of an already evaluated reduced form value.
double envelope_of_tilde(const ThetaParams& theta, double tilde);

/// Exact limit of the envelope as m, n grow without bound.
double envelope_floor(const ThetaParams& theta);

/// eps0 * c_inf / eta. This equals envelope_floor only when c_inf << eta.
double irreducible_error(const ThetaParams& theta);

/// Signed relative difference (estimate - actual) / actual.
double divergence(double estimate, double actual);
double divergence(const ThetaParams& theta, const Measurement& point);

double eval_slice(const SliceParams& params, double size);

}  // namespace scalefit
