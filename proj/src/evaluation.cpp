#include "scalefit/evaluation.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "scalefit/errors.hpp"
#include "scalefit/random.hpp"

namespace scalefit {

namespace {

double population_std(const std::vector<double>& values, double mean) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

double mean_of(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

DivergenceStats summarize(std::vector<PointDivergence> per_point) {
    DivergenceStats stats;
    if (per_point.empty()) throw ValidationError("cannot summarize an empty set of divergences");
    std::vector<double> deltas;
    std::vector<double> abs_deltas;
    deltas.reserve(per_point.size());
    for (const auto& p : per_point) {
        deltas.push_back(p.delta);
        abs_deltas.push_back(std::abs(p.delta));
    }
    stats.mu = mean_of(deltas);
    stats.sigma = population_std(deltas, stats.mu);
    stats.mean_abs = mean_of(abs_deltas);
    stats.per_point = std::move(per_point);
    return stats;
}

DivergenceStats divergence_stats(const ThetaParams& theta, const MeasurementGrid& grid) {
    std::vector<PointDivergence> per_point;
    per_point.reserve(grid.size());
    for (const auto& p : grid.points) {
        const double estimate = eval_envelope(theta, p.m, p.n);
        per_point.push_back({p.m, p.n, p.eps, estimate, divergence(estimate, p.eps)});
    }
    return summarize(std::move(per_point));
}

std::vector<std::size_t> assign_folds(std::size_t points, std::size_t folds, std::uint64_t seed) {
    if (folds == 0 || folds > points) throw InsufficientData("need 1 <= folds <= number of points");
    std::vector<std::size_t> order(points);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed, streams::fold_assignment);
    rng.shuffle(order);
    std::vector<std::size_t> fold_of(points);
    const std::size_t base = points / folds;
    const std::size_t extra = points % folds;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t chunk = base + (f < extra ? 1 : 0);
        for (std::size_t k = 0; k < chunk; ++k) fold_of[order[pos++]] = f;
    }
    return fold_of;
}

DivergenceStats cross_validate(const MeasurementGrid& grid, std::size_t folds, const FitConfig& config,
                               const Eps0Mode& mode) {
    validate(grid);
    MeasurementGrid sorted = grid;
    canonical_sort(sorted);
    if (folds < 2) throw InsufficientData("cross-validation needs at least 2 folds");
    if (sorted.size() < folds) {
        throw InsufficientData("cross-validation needs at least as many points as folds (" +
                               std::to_string(folds) + "), got " + std::to_string(sorted.size()));
    }
    const auto fold_of = assign_folds(sorted.size(), folds, config.seed);

    std::vector<MeasurementGrid> training(folds);
    for (std::size_t f = 0; f < folds; ++f) {
        training[f].metric_kind = sorted.metric_kind;
        training[f].num_classes = sorted.num_classes;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (fold_of[i] != f) training[f].points.push_back(sorted.points[i]);
        }
        try {
            check_fit_preconditions(training[f], mode);
        } catch (const InsufficientData& e) {
            throw InsufficientData("training complement of fold " + std::to_string(f) + ": " + e.what());
        }
    }

    std::vector<PointDivergence> per_point(sorted.size());
    std::vector<double> fold_means;
    for (std::size_t f = 0; f < folds; ++f) {
        const FitResult fit = fit_theta(training[f], config, mode);
        std::vector<double> held_out;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (fold_of[i] != f) continue;
            const auto& p = sorted.points[i];
            const double estimate = eval_envelope(fit.theta, p.m, p.n);
            per_point[i] = {p.m, p.n, p.eps, estimate, divergence(estimate, p.eps)};
            held_out.push_back(per_point[i].delta);
        }
        fold_means.push_back(mean_of(held_out));
    }
    DivergenceStats stats = summarize(std::move(per_point));
    stats.fold_mu_std = population_std(fold_means, mean_of(fold_means));
    return stats;
}

}  // namespace scalefit
