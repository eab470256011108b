#include "scalefit/extrapolation.hpp"

#include <algorithm>
#include <string>

#include "scalefit/errors.hpp"

namespace scalefit {

namespace {

bool in_rectangle(const Measurement& p, Cut cut) { return p.m <= cut.m && p.n <= cut.n; }

bool is_target(const Measurement& p, Cut cut, TargetRule rule) {
    if (rule == TargetRule::strict_and) return p.m > cut.m && p.n > cut.n;
    return !in_rectangle(p, cut);
}

std::vector<PointDivergence> evaluate(const MeasurementGrid& grid, const ThetaParams* theta) {
    std::vector<PointDivergence> out;
    out.reserve(grid.size());
    for (const auto& p : grid.points) {
        PointDivergence d{p.m, p.n, p.eps, 0.0, 0.0};
        if (theta) {
            d.eps_estimated = eval_envelope(*theta, p.m, p.n);
            d.delta = divergence(d.eps_estimated, p.eps);
        }
        out.push_back(d);
    }
    return out;
}

bool low_signal(const MeasurementGrid& train) {
    if (train.points.empty()) return true;
    const auto [lo, hi] = std::minmax_element(train.points.begin(), train.points.end(),
                                              [](const Measurement& a, const Measurement& b) { return a.eps < b.eps; });
    return hi->eps / lo->eps < kLowSignalSpread;
}

/// Shared by the single-cut and sweep entry points. An empty target wins
/// over an unfittable rectangle when both apply.
ExtrapolationReport run_cut(const GridSplit& split, Cut cut, const FitConfig& config, const Eps0Mode& mode,
                            TargetRule rule) {
    ExtrapolationReport report;
    report.cut = cut;
    report.target_rule = rule;
    report.low_signal = low_signal(split.train);
    bool fittable = true;
    try {
        check_fit_preconditions(split.train, mode);
    } catch (const InsufficientData&) {
        fittable = false;
    }
    if (fittable) report.fit = fit_theta(split.train, config, mode);
    const ThetaParams* theta = report.fit ? &report.fit->theta : nullptr;
    report.train_points = evaluate(split.train, theta);
    report.target_points = evaluate(split.target, theta);
    if (report.target_points.empty()) {
        report.status = CutStatus::empty_target;
    } else if (!fittable) {
        report.status = CutStatus::insufficient_data;
    } else {
        report.stats = summarize(report.target_points);
    }
    return report;
}

}  // namespace

GridSplit split_at_cut(const MeasurementGrid& grid, Cut cut, TargetRule rule) {
    GridSplit split;
    for (auto* part : {&split.train, &split.target}) {
        part->metric_kind = grid.metric_kind;
        part->num_classes = grid.num_classes;
    }
    MeasurementGrid sorted = grid;
    canonical_sort(sorted);
    for (const auto& p : sorted.points) {
        if (in_rectangle(p, cut)) {
            split.train.points.push_back(p);
        } else if (is_target(p, cut, rule)) {
            split.target.points.push_back(p);
        }
    }
    return split;
}

ExtrapolationReport extrapolate_once(const MeasurementGrid& grid, Cut cut, const FitConfig& config,
                                     const Eps0Mode& mode, TargetRule rule) {
    validate(grid);
    const GridSplit split = split_at_cut(grid, cut, rule);
    if (split.target.points.empty()) {
        throw EmptyTarget("no target configurations beyond the cut (m <= " + std::to_string(cut.m) +
                          ", n <= " + std::to_string(cut.n) + ")");
    }
    check_fit_preconditions(split.train, mode);
    return run_cut(split, cut, config, mode, rule);
}

void require_full_grid(const MeasurementGrid& grid) {
    validate(grid);
    const auto ms = distinct_m(grid);
    const auto ns = distinct_n(grid);
    if (ms.size() * ns.size() != grid.size()) {
        throw NotAGrid("measurements do not form a full product of " + std::to_string(ms.size()) +
                       " model sizes x " + std::to_string(ns.size()) + " data sizes (" +
                       std::to_string(grid.size()) + " points)");
    }
}

std::vector<ExtrapolationReport> extrapolation_sweep(const MeasurementGrid& grid, const FitConfig& config,
                                                     const Eps0Mode& mode, TargetRule rule) {
    require_full_grid(grid);
    const auto ms = distinct_m(grid);
    const auto ns = distinct_n(grid);
    std::vector<ExtrapolationReport> reports;
    for (std::size_t i = 1; i < ms.size(); ++i) {
        for (std::size_t j = 1; j < ns.size(); ++j) {
            const Cut cut{ms[i], ns[j]};
            ExtrapolationReport report = run_cut(split_at_cut(grid, cut, rule), cut, config, mode, rule);
            report.m_index = i;
            report.n_index = j;
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

}  // namespace scalefit
