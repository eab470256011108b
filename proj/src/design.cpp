#include "scalefit/design.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scalefit/errors.hpp"

namespace scalefit {

namespace {

void require_positive_size(double size, const char* name) {
    if (!(size > 0.0) || !std::isfinite(size)) throw DomainError(std::string(name) + " must be a finite size > 0");
}

void require_threshold(double threshold) {
    if (!(threshold > 1.0) || !std::isfinite(threshold)) {
        throw DomainError("contribution threshold T must be > 1");
    }
}

void require_level(double level) {
    if (!(level > 0.0) || !std::isfinite(level)) throw DomainError("contour level must be > 0");
}

void require_alpha(const ThetaParams& theta) {
    if (!(theta.alpha > 0.0)) throw DegenerateExponent("alpha must be > 0 for this design query");
}

void require_beta(const ThetaParams& theta) {
    if (!(theta.beta > 0.0)) throw DegenerateExponent("beta must be > 0 for this design query");
}

double relative(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

// Defining equations, evaluated with std::pow rather than the exp/log route
// used by the closed forms.
double contour_value(const ThetaParams& theta, double m, double n) {
    return std::pow(n, -theta.alpha) + theta.b * std::pow(m, -theta.beta);
}

}  // namespace

DesignAnswer max_useful_model(const ThetaParams& theta, double n_lim, double threshold) {
    validate(theta);
    require_positive_size(n_lim, "n_lim");
    require_threshold(threshold);
    require_beta(theta);
    DesignAnswer answer;
    answer.kind = AnswerKind::size;
    answer.n = n_lim;
    answer.m = std::exp((std::log(theta.b * threshold) + theta.alpha * std::log(n_lim)) / theta.beta);
    const double ratio = std::pow(n_lim, -theta.alpha) / (theta.b * std::pow(*answer.m, -theta.beta));
    answer.residual = relative(ratio, threshold);
    return answer;
}

DesignAnswer max_useful_data(const ThetaParams& theta, double m_lim, double threshold) {
    validate(theta);
    require_positive_size(m_lim, "m_lim");
    require_threshold(threshold);
    require_alpha(theta);
    DesignAnswer answer;
    answer.kind = AnswerKind::size;
    answer.m = m_lim;
    answer.n = std::exp((std::log(threshold / theta.b) + theta.beta * std::log(m_lim)) / theta.alpha);
    const double ratio = theta.b * std::pow(m_lim, -theta.beta) / std::pow(*answer.n, -theta.alpha);
    answer.residual = relative(ratio, threshold);
    return answer;
}

DesignAnswer invert_envelope(const ThetaParams& theta, double target_eps) {
    validate(theta);
    const double lower = envelope_floor(theta);
    const double r = target_eps / theta.eps0;
    if (!(target_eps > lower) || !(r < 1.0 - 1e-12)) {
        throw OutOfRange("target error " + std::to_string(target_eps) + " is not reachable: it must lie in (" +
                         std::to_string(lower) + ", " + std::to_string(theta.eps0) + ")");
    }
    DesignAnswer answer;
    answer.kind = AnswerKind::reduced_level;
    answer.reduced_level = theta.eta * r / std::sqrt((1.0 - r) * (1.0 + r));
    const double t = *answer.reduced_level;
    answer.residual = relative(theta.eps0 * t / std::hypot(t, theta.eta), target_eps);
    return answer;
}

double contour_level_for_error(const ThetaParams& theta, double target_eps) {
    return *invert_envelope(theta, target_eps).reduced_level - theta.c_inf;
}

DesignAnswer contour_model_size(const ThetaParams& theta, double level, double n) {
    validate(theta);
    require_level(level);
    require_positive_size(n, "n");
    require_beta(theta);
    const double remainder = level - std::pow(n, -theta.alpha);
    if (!(remainder > 0.0)) {
        throw Infeasible("data term alone reaches the contour level at n = " + std::to_string(n) +
                         "; no finite model size attains it");
    }
    DesignAnswer answer;
    answer.kind = AnswerKind::size;
    answer.n = n;
    answer.m = std::exp((std::log(theta.b) - std::log(remainder)) / theta.beta);
    answer.residual = relative(contour_value(theta, *answer.m, n), level);
    return answer;
}

DesignAnswer contour_data_size(const ThetaParams& theta, double level, double m) {
    validate(theta);
    require_level(level);
    require_positive_size(m, "m");
    require_alpha(theta);
    const double remainder = level - theta.b * std::pow(m, -theta.beta);
    if (!(remainder > 0.0)) {
        throw Infeasible("model term alone reaches the contour level at m = " + std::to_string(m) +
                         "; no finite data size attains it");
    }
    DesignAnswer answer;
    answer.kind = AnswerKind::size;
    answer.m = m;
    answer.n = std::exp(-std::log(remainder) / theta.alpha);
    answer.residual = relative(contour_value(theta, m, *answer.n), level);
    return answer;
}

DesignAnswer contour_sweep(const ThetaParams& theta, double level, std::size_t samples) {
    validate(theta);
    require_level(level);
    require_alpha(theta);
    require_beta(theta);
    if (samples < 2) throw DomainError("a contour sweep needs at least 2 samples");
    const double log_lo = -std::log(0.999 * level) / theta.alpha;
    const double log_hi = -std::log(0.001 * level) / theta.alpha;
    DesignAnswer answer;
    answer.kind = AnswerKind::contour;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
        const double n = std::exp(log_lo + t * (log_hi - log_lo));
        const DesignAnswer point = contour_model_size(theta, level, n);
        answer.contour.push_back({*point.m, n});
        answer.residual = std::max(answer.residual, point.residual);
    }
    return answer;
}

DesignAnswer compute_optimal_split(const ThetaParams& theta, double level) {
    validate(theta);
    require_level(level);
    require_alpha(theta);
    require_beta(theta);
    const double a = theta.alpha;
    const double bt = theta.beta;
    // At the optimum the data term holds c*beta/(alpha+beta) of the level and
    // the model term c*alpha/(alpha+beta).
    DesignAnswer answer;
    answer.kind = AnswerKind::ratio_point;
    answer.n = std::exp(-std::log(level * bt / (a + bt)) / a);
    answer.m = std::exp(std::log(theta.b * (a + bt) / (level * a)) / bt);
    const double ratio = (theta.b * bt / a) * std::pow(*answer.n, a) / std::pow(*answer.m, bt);
    answer.residual = std::max(relative(contour_value(theta, *answer.m, *answer.n), level), relative(ratio, 1.0));
    return answer;
}

double round_to_ladder(double value, std::span<const double> ladder) {
    if (ladder.empty()) throw DomainError("ladder is empty");
    double best = ladder.front();
    for (double rung : ladder) {
        const double d = std::abs(rung - value);
        const double best_d = std::abs(best - value);
        if (d < best_d || (d == best_d && rung < best)) best = rung;
    }
    return best;
}

}  // namespace scalefit
