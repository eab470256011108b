#include "scalefit/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "scalefit/errors.hpp"
#include "scalefit/least_squares.hpp"
#include "scalefit/parallel.hpp"
#include "scalefit/random.hpp"

namespace scalefit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogLower = -60.0;
constexpr double kLogUpper = 40.0;
const double kLogCInfFloor = std::log(1e-14);

enum Slot : Eigen::Index { kAlpha = 0, kBeta, kB, kCInf, kEta, kEps0 };

/// Columnar view of the measurements, possibly in normalized size units.
struct Samples {
    std::vector<double> log_m;
    std::vector<double> log_n;
    std::vector<double> eps;
};

Samples make_samples(const MeasurementGrid& grid, double m_ref, double n_ref) {
    Samples s;
    s.log_m.reserve(grid.size());
    s.log_n.reserve(grid.size());
    s.eps.reserve(grid.size());
    for (const auto& p : grid.points) {
        s.log_m.push_back(std::log(p.m / m_ref));
        s.log_n.push_back(std::log(p.n / n_ref));
        s.eps.push_back(p.eps);
    }
    return s;
}

/// Relative residuals of the envelope and their Jacobian w.r.t. log params.
bool envelope_residuals(const Samples& s, const Eigen::VectorXd& u, const Eps0Mode& mode, Eigen::VectorXd& r,
                        Eigen::MatrixXd* jac) {
    const double alpha = std::exp(u[kAlpha]);
    const double beta = std::exp(u[kBeta]);
    const double b = std::exp(u[kB]);
    const double c = std::exp(u[kCInf]);
    const double eta = std::exp(u[kEta]);
    const double eps0 = mode.is_fixed() ? mode.value() : std::exp(u[kEps0]);

    const auto count = static_cast<Eigen::Index>(s.eps.size());
    r.resize(count);
    if (jac) jac->resize(count, u.size());
    for (Eigen::Index i = 0; i < count; ++i) {
        const double data_term = std::exp(-alpha * s.log_n[i]);
        const double model_term = b * std::exp(-beta * s.log_m[i]);
        const double tilde = data_term + model_term + c;
        const double q = eta / tilde;
        const double root = std::sqrt(1.0 + q * q);
        const double estimate = eps0 / root;
        const double inv_eps = 1.0 / s.eps[i];
        r[i] = estimate / s.eps[i] - 1.0;
        if (jac) {
            const double root3 = root * root * root;
            // d estimate / d tilde
            const double d_tilde = eps0 * q * q / (tilde * root3) * inv_eps;
            (*jac)(i, kAlpha) = d_tilde * (-s.log_n[i] * data_term) * alpha;
            (*jac)(i, kBeta) = d_tilde * (-s.log_m[i] * model_term) * beta;
            (*jac)(i, kB) = d_tilde * model_term;
            (*jac)(i, kCInf) = d_tilde * c;
            (*jac)(i, kEta) = -eps0 * q * q / root3 * inv_eps;
            if (!mode.is_fixed()) (*jac)(i, kEps0) = estimate * inv_eps;
        }
    }
    if (!r.allFinite()) return false;
    return jac == nullptr || jac->allFinite();
}

double sample_log_uniform(Rng& rng, const LogRange& range) {
    return rng.uniform(std::log(range.lo), std::log(range.hi));
}

LevenbergMarquardtOptions lm_options(const FitConfig& config, Eigen::Index params) {
    LevenbergMarquardtOptions opt;
    opt.max_iterations = config.max_iterations;
    opt.objective_tolerance = config.objective_tolerance;
    opt.step_tolerance = config.step_tolerance;
    opt.lower = Eigen::VectorXd::Constant(params, kLogLower);
    opt.upper = Eigen::VectorXd::Constant(params, kLogUpper);
    return opt;
}

void check_range(const LogRange& range, const char* name) {
    if (!(range.lo > 0.0) || !(range.hi >= range.lo) || !std::isfinite(range.hi)) {
        throw DomainError(std::string("init range for ") + name + " must satisfy 0 < lo <= hi");
    }
}

}  // namespace

void FitConfig::validate() const {
    if (restarts < 1) throw DomainError("restarts must be >= 1");
    if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
    if (!(objective_tolerance > 0.0) || !(step_tolerance > 0.0)) throw DomainError("tolerances must be > 0");
    check_range(init_ranges.alpha, "alpha");
    check_range(init_ranges.beta, "beta");
    check_range(init_ranges.b, "b");
    check_range(init_ranges.c_inf, "c_inf");
    check_range(init_ranges.eta, "eta");
    check_range(init_ranges.eps0, "eps0");
}

Eps0Mode Eps0Mode::fixed(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("fixed eps0 must be finite and > 0");
    return Eps0Mode(true, value);
}

Eps0Mode Eps0Mode::free() { return Eps0Mode(false, 0.0); }

Eps0Mode default_eps0_mode(const MeasurementGrid& grid) {
    if (grid.metric_kind == MetricKind::top1_error && grid.num_classes) {
        const auto k = *grid.num_classes;
        if (k < 2) throw ValidationError("random-guess error needs at least two classes");
        return Eps0Mode::fixed(static_cast<double>(k - 1) / static_cast<double>(k));
    }
    return Eps0Mode::free();
}

double fit_objective(const ThetaParams& theta, const MeasurementGrid& grid) {
    double total = 0.0;
    for (const auto& p : grid.points) {
        const double d = divergence(theta, p);
        total += d * d;
    }
    return total;
}

void check_fit_preconditions(const MeasurementGrid& grid, const Eps0Mode& mode) {
    validate(grid);
    const std::size_t needed = mode.free_parameter_count() + 1;
    if (grid.size() < needed) {
        throw InsufficientData("fit needs at least " + std::to_string(needed) + " measurements for " +
                               std::to_string(mode.free_parameter_count()) + " free parameters, got " +
                               std::to_string(grid.size()));
    }
    if (distinct_m(grid).size() < 2 || distinct_n(grid).size() < 2) {
        throw InsufficientData("fit needs at least two distinct model sizes and two distinct data sizes");
    }
}

std::vector<double> to_free_parameters(const ThetaParams& theta, const Eps0Mode& mode) {
    std::vector<double> u{std::log(theta.alpha), std::log(theta.beta), std::log(theta.b), std::log(theta.c_inf),
                          std::log(theta.eta)};
    if (!mode.is_fixed()) u.push_back(std::log(theta.eps0));
    return u;
}

ThetaParams from_free_parameters(std::span<const double> free, const Eps0Mode& mode) {
    if (free.size() != mode.free_parameter_count()) throw DomainError("free parameter vector has wrong size");
    ThetaParams theta;
    theta.alpha = std::exp(free[kAlpha]);
    theta.beta = std::exp(free[kBeta]);
    theta.b = std::exp(free[kB]);
    theta.c_inf = std::exp(free[kCInf]);
    theta.eta = std::exp(free[kEta]);
    theta.eps0 = mode.is_fixed() ? mode.value() : std::exp(free[kEps0]);
    theta.eps0_fixed = mode.is_fixed();
    return theta;
}

ObjectiveGradient objective_and_gradient(std::span<const double> theta_free, const MeasurementGrid& grid,
                                         const Eps0Mode& mode) {
    if (theta_free.size() != mode.free_parameter_count()) throw DomainError("free parameter vector has wrong size");
    const Samples samples = make_samples(grid, 1.0, 1.0);
    const Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(theta_free.data(),
                                                                static_cast<Eigen::Index>(theta_free.size()));
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    envelope_residuals(samples, u, mode, r, &jac);
    const Eigen::VectorXd g = 2.0 * jac.transpose() * r;
    return {r.squaredNorm(), std::vector<double>(g.data(), g.data() + g.size())};
}

FitResult fit_theta(const MeasurementGrid& input, const FitConfig& config, const Eps0Mode& mode) {
    config.validate();
    check_fit_preconditions(input, mode);
    // Canonical order makes the result independent of row order.
    MeasurementGrid grid = input;
    canonical_sort(grid);

    double m_ref = 0.0;
    double n_ref = 0.0;
    for (const auto& p : grid.points) {
        m_ref = std::max(m_ref, p.m);
        n_ref = std::max(n_ref, p.n);
    }
    const Samples samples = make_samples(grid, m_ref, n_ref);
    const auto params = static_cast<Eigen::Index>(mode.free_parameter_count());
    LevenbergMarquardtOptions options = lm_options(config, params);
    options.lower[kCInf] = kLogCInfFloor;

    const auto restarts = static_cast<std::size_t>(config.restarts);
    std::vector<LevenbergMarquardtResult> runs(restarts);
    const ResidualFunction residuals = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        return envelope_residuals(samples, u, mode, r, jac);
    };
    parallel_for(restarts, resolve_thread_count(config.threads), [&](std::size_t i) {
        Rng rng(config.seed, streams::fit_restart + i);
        const InitRanges& ranges = config.init_ranges;
        Eigen::VectorXd u0(params);
        u0[kAlpha] = sample_log_uniform(rng, ranges.alpha);
        u0[kBeta] = sample_log_uniform(rng, ranges.beta);
        u0[kB] = sample_log_uniform(rng, ranges.b);
        u0[kCInf] = sample_log_uniform(rng, ranges.c_inf);
        u0[kEta] = sample_log_uniform(rng, ranges.eta);
        if (!mode.is_fixed()) u0[kEps0] = sample_log_uniform(rng, ranges.eps0);
        runs[i] = levenberg_marquardt(residuals, u0, options);
    });

    FitResult result;
    result.seed = config.seed;
    result.m_ref = m_ref;
    result.n_ref = n_ref;
    result.restart_objectives.resize(restarts, kInf);
    result.iterations_used.resize(restarts, 0);
    std::vector<ThetaParams> normalized(restarts);
    std::vector<ThetaParams> raw(restarts);
    bool any_finite = false;
    for (std::size_t i = 0; i < restarts; ++i) {
        result.iterations_used[i] = runs[i].iterations;
        if (!runs[i].finite) continue;
        normalized[i] = from_free_parameters(std::span<const double>(runs[i].x.data(), runs[i].x.size()), mode);
        raw[i] = rescale_sizes(normalized[i], m_ref, n_ref);
        const double objective = fit_objective(raw[i], grid);
        if (!std::isfinite(objective)) continue;
        result.restart_objectives[i] = objective;
        if (!any_finite || objective < result.restart_objectives[result.winning_restart]) {
            result.winning_restart = i;
        }
        any_finite = true;
    }
    if (!any_finite) {
        std::ostringstream msg;
        msg << "all " << restarts << " restarts produced a non-finite objective (iterations:";
        for (int it : result.iterations_used) msg << ' ' << it;
        msg << ')';
        throw NonFiniteObjective(msg.str());
    }
    result.theta = raw[result.winning_restart];
    result.theta_normalized = normalized[result.winning_restart];
    result.objective = result.restart_objectives[result.winning_restart];
    return result;
}

namespace {

enum SliceSlot : Eigen::Index { kCoeff = 0, kExponent, kFloor };

bool slice_residuals(std::span<const double> log_size, std::span<const double> eps, const Eigen::VectorXd& u,
                     Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    const double coeff = std::exp(u[kCoeff]);
    const double exponent = std::exp(u[kExponent]);
    const double floor = std::exp(u[kFloor]);
    const auto count = static_cast<Eigen::Index>(eps.size());
    r.resize(count);
    if (jac) jac->resize(count, 3);
    for (Eigen::Index i = 0; i < count; ++i) {
        const double power = coeff * std::exp(-exponent * log_size[i]);
        const double inv_eps = 1.0 / eps[i];
        r[i] = (power + floor) * inv_eps - 1.0;
        if (jac) {
            (*jac)(i, kCoeff) = power * inv_eps;
            (*jac)(i, kExponent) = -log_size[i] * power * exponent * inv_eps;
            (*jac)(i, kFloor) = floor * inv_eps;
        }
    }
    if (!r.allFinite()) return false;
    return jac == nullptr || jac->allFinite();
}

double slice_objective(const SliceParams& params, std::span<const SlicePoint> points) {
    double total = 0.0;
    for (const auto& p : points) {
        const double d = divergence(eval_slice(params, p.size), p.eps);
        total += d * d;
    }
    return total;
}

}  // namespace

SliceParams fit_slice(std::span<const SlicePoint> points, SliceAxis axis, const FitConfig& config) {
    config.validate();
    std::vector<double> sizes;
    double size_ref = 0.0;
    double eps_ref = 0.0;
    for (const auto& p : points) {
        if (!(p.size >= 1.0) || !std::isfinite(p.size)) throw ValidationError("slice sizes must be >= 1");
        if (!(p.eps > 0.0) || !std::isfinite(p.eps)) throw ValidationError("slice errors must be finite and > 0");
        sizes.push_back(p.size);
        size_ref = std::max(size_ref, p.size);
        eps_ref = std::max(eps_ref, p.eps);
    }
    std::sort(sizes.begin(), sizes.end());
    if (std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
        throw ValidationError("slice sizes must be distinct");
    }
    if (points.size() < 4) {
        throw InsufficientData("slice fit needs at least 4 points for 3 free parameters, got " +
                               std::to_string(points.size()));
    }

    std::vector<double> log_size;
    std::vector<double> eps;
    for (const auto& p : points) {
        log_size.push_back(std::log(p.size / size_ref));
        eps.push_back(p.eps);
    }
    LevenbergMarquardtOptions options = lm_options(config, 3);
    options.lower[kFloor] = std::log(1e-14 * eps_ref);
    const ResidualFunction residuals = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        return slice_residuals(log_size, eps, u, r, jac);
    };

    const auto restarts = static_cast<std::size_t>(config.restarts);
    std::vector<LevenbergMarquardtResult> runs(restarts);
    parallel_for(restarts, resolve_thread_count(config.threads), [&](std::size_t i) {
        Rng rng(config.seed, streams::fit_restart + i);
        Eigen::VectorXd u0(3);
        u0[kCoeff] = sample_log_uniform(rng, {1e-4 * eps_ref, eps_ref});
        u0[kExponent] = sample_log_uniform(rng, {0.05, 2.0});
        u0[kFloor] = sample_log_uniform(rng, {1e-12 * eps_ref, eps_ref});
        runs[i] = levenberg_marquardt(residuals, u0, options);
    });

    std::optional<SliceParams> best;
    double best_objective = kInf;
    for (const auto& run : runs) {
        if (!run.finite) continue;
        SliceParams candidate;
        candidate.axis = axis;
        candidate.exponent = std::exp(run.x[kExponent]);
        candidate.coeff = std::exp(run.x[kCoeff] + candidate.exponent * std::log(size_ref));
        candidate.floor = std::exp(run.x[kFloor]);
        const double objective = slice_objective(candidate, points);
        if (std::isfinite(objective) && objective < best_objective) {
            best_objective = objective;
            best = candidate;
        }
    }
    if (!best) throw NonFiniteObjective("all slice-fit restarts produced a non-finite objective");
    return *best;
}

}  // namespace scalefit
