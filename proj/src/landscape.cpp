#include "scalefit/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "scalefit/errors.hpp"

namespace scalefit {

namespace {

void require_size(double size, const char* name) {
    if (!(size >= 1.0) || !std::isfinite(size)) {
        throw DomainError(std::string(name) + " must be a finite size >= 1, got " + std::to_string(size));
    }
}

}  // namespace

void validate(const ThetaParams& theta) {
    auto check = [](bool ok, const char* what) {
        if (!ok) throw DomainError(std::string("invalid theta: ") + what);
    };
    check(std::isfinite(theta.alpha) && theta.alpha >= 0.0, "alpha must be >= 0");
    check(std::isfinite(theta.beta) && theta.beta >= 0.0, "beta must be >= 0");
    check(std::isfinite(theta.b) && theta.b > 0.0, "b must be > 0");
    check(std::isfinite(theta.c_inf) && theta.c_inf >= 0.0, "c_inf must be >= 0");
    check(std::isfinite(theta.eta) && theta.eta > 0.0, "eta must be > 0");
    check(std::isfinite(theta.eps0) && theta.eps0 > 0.0, "eps0 must be > 0");
}

ThetaParams rescale_sizes(const ThetaParams& theta, double m_ref, double n_ref) {
    if (!(m_ref > 0.0) || !(n_ref > 0.0)) throw DomainError("reference sizes must be > 0");
    // t(m/M, n/N) = N^alpha * [n^-alpha + b M^beta N^-alpha m^-beta + c N^-alpha]
    const double data_scale = std::exp(-theta.alpha * std::log(n_ref));
    ThetaParams out = theta;
    out.b = theta.b * std::exp(theta.beta * std::log(m_ref) - theta.alpha * std::log(n_ref));
    out.c_inf = theta.c_inf * data_scale;
    out.eta = theta.eta * data_scale;
    return out;
}

void validate(const MeasurementGrid& grid) {
    if (grid.points.empty()) throw ValidationError("measurement grid is empty");
    for (const auto& p : grid.points) {
        if (!(p.m >= 1.0) || !std::isfinite(p.m)) throw ValidationError("model size must be >= 1");
        if (!(p.n >= 1.0) || !std::isfinite(p.n)) throw ValidationError("data size must be >= 1");
        if (!(p.eps > 0.0) || !std::isfinite(p.eps)) {
            throw ValidationError("error values must be finite and > 0 (divergence divides by the error)");
        }
    }
    std::vector<std::pair<double, double>> keys;
    keys.reserve(grid.points.size());
    for (const auto& p : grid.points) keys.emplace_back(p.m, p.n);
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
        throw ValidationError("duplicate (m, n) configuration in grid");
    }
    if (grid.num_classes && *grid.num_classes < 1) throw ValidationError("num_classes must be positive");
}

void canonical_sort(MeasurementGrid& grid) {
    std::sort(grid.points.begin(), grid.points.end(), [](const Measurement& a, const Measurement& b) {
        return std::tie(a.m, a.n) < std::tie(b.m, b.n);
    });
}

namespace {

template <typename Proj>
std::vector<double> distinct_levels(const MeasurementGrid& grid, Proj proj) {
    std::vector<double> out;
    out.reserve(grid.points.size());
    for (const auto& p : grid.points) out.push_back(proj(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<double> distinct_m(const MeasurementGrid& grid) {
    return distinct_levels(grid, [](const Measurement& p) { return p.m; });
}

std::vector<double> distinct_n(const MeasurementGrid& grid) {
    return distinct_levels(grid, [](const Measurement& p) { return p.n; });
}

double inverse_power(double size, double exponent) {
    return std::exp(-exponent * std::log(size));
}

double eval_tilde(const ThetaParams& theta, double m, double n) {
    require_size(m, "m");
    require_size(n, "n");
    return inverse_power(n, theta.alpha) + theta.b * inverse_power(m, theta.beta) + theta.c_inf;
}

double envelope_of_tilde(const ThetaParams& theta, double tilde) {
    // eps0 * t / sqrt(t^2 + eta^2), arranged so every step is monotone in t
    const double ratio = theta.eta / tilde;
    return theta.eps0 / std::sqrt(1.0 + ratio * ratio);
}

double eval_envelope(const ThetaParams& theta, double m, double n) {
    return envelope_of_tilde(theta, eval_tilde(theta, m, n));
}

double envelope_floor(const ThetaParams& theta) {
    return envelope_of_tilde(theta, theta.c_inf);
}

double irreducible_error(const ThetaParams& theta) {
    validate(theta);
    return theta.eps0 * theta.c_inf / theta.eta;
}

double divergence(double estimate, double actual) {
    if (!(actual > 0.0)) throw DomainError("divergence is undefined for non-positive measured error");
    return (estimate - actual) / actual;
}

double divergence(const ThetaParams& theta, const Measurement& point) {
    if (!(point.eps > 0.0)) throw DomainError("divergence is undefined for non-positive measured error");
    return divergence(eval_envelope(theta, point.m, point.n), point.eps);
}

double eval_slice(const SliceParams& params, double size) {
    require_size(size, "size");
    return params.coeff * inverse_power(size, params.exponent) + params.floor;
}

}  // namespace scalefit
