#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "scalefit/errors.hpp"
#include "scalefit/fitter.hpp"
#include "scalefit/fixtures.hpp"
#include "scalefit/io.hpp"
#include "scalefit/random.hpp"
#include "support.hpp"

using namespace scalefit;
using scalefit::testing::fixture_grid;

namespace {

Eps0Mode mode_for(const FixtureRecord& f) {
    return f.num_classes ? Eps0Mode::fixed(f.theta().eps0) : Eps0Mode::free();
}

double max_abs_divergence(const ThetaParams& theta, const MeasurementGrid& grid) {
    double worst = 0.0;
    for (const auto& p : grid.points) worst = std::max(worst, std::abs(divergence(theta, p)));
    return worst;
}

ThetaParams symmetric_theta() {
    ThetaParams t;
    t.alpha = 0.5;
    t.beta = 0.5;
    t.b = 1.0;
    t.c_inf = 0.0;
    t.eta = 10.0;
    t.eps0 = 1.0;
    return t;
}

std::vector<double> decades(int lo, int hi) {
    std::vector<double> out;
    for (int k = lo; k <= hi; ++k) out.push_back(std::pow(10.0, k));
    return out;
}

FitConfig quick_config(int restarts = 20) {
    FitConfig config;
    config.restarts = restarts;
    config.threads = 1;
    return config;
}

}  // namespace

TEST_CASE("ImageNet 7x7 noiseless round trip") {
    const auto& f = fixture("imagenet");
    const auto grid = fixture_grid(f);
    REQUIRE(grid.size() == 49);
    const auto result = fit_theta(grid, quick_config(), default_eps0_mode(grid));
    CHECK(result.theta.eps0 == doctest::Approx(0.999));
    CHECK(max_abs_divergence(result.theta, grid) < 5e-3);
    CHECK(result.objective == doctest::Approx(fit_objective(result.theta, grid)).epsilon(1e-12));
}

TEST_CASE("every fixture is recovered from its noiseless grid") {
    for (const auto& f : fixtures()) {
        CAPTURE(f.name);
        const auto grid = fixture_grid(f);
        const auto result = fit_theta(grid, quick_config(), mode_for(f));
        CHECK(max_abs_divergence(result.theta, grid) < 5e-3);
        CHECK_NOTHROW(validate(result.theta));
    }
}

TEST_CASE("too few points for free eps0") {
    MeasurementGrid grid;
    grid.points = {{10, 10, 0.5}, {10, 100, 0.4}, {100, 10, 0.4}, {100, 100, 0.3}};
    CHECK_THROWS_AS(fit_theta(grid, quick_config(), Eps0Mode::free()), InsufficientData);
    CHECK_THROWS_AS(check_fit_preconditions(grid, Eps0Mode::fixed(0.9)), InsufficientData);
}

TEST_CASE("single-axis grids are rejected") {
    MeasurementGrid grid;
    for (int k = 1; k <= 10; ++k) grid.points.push_back({std::pow(2.0, k), 100, 1.0 / k});
    CHECK_THROWS_AS(fit_theta(grid, quick_config(), Eps0Mode::fixed(0.9)), InsufficientData);
}

TEST_CASE("symmetric landscape fits to machine precision") {
    const auto sizes = decades(1, 6);
    const auto grid = synth_landscape(symmetric_theta(), sizes, sizes);
    const auto result = fit_theta(grid, quick_config(), Eps0Mode::free());
    CHECK(result.objective < 1e-8);
}

TEST_CASE("restart bookkeeping") {
    const auto grid = fixture_grid(fixture("cifar10"));
    const auto result = fit_theta(grid, quick_config(12), default_eps0_mode(grid));
    REQUIRE(result.restart_objectives.size() == 12);
    REQUIRE(result.iterations_used.size() == 12);
    const auto best = std::min_element(result.restart_objectives.begin(), result.restart_objectives.end());
    CHECK(result.objective == *best);
    CHECK(result.winning_restart == static_cast<std::size_t>(best - result.restart_objectives.begin()));
}

TEST_CASE("fit is identical across thread counts") {
    const auto grid = fixture_grid(fixture("ptb"), MultiplicativeNoise{0.01, 4});
    FitConfig one = quick_config(16);
    FitConfig many = one;
    many.threads = 4;
    const auto a = fit_theta(grid, one, Eps0Mode::free());
    const auto b = fit_theta(grid, many, Eps0Mode::free());
    const auto c = fit_theta(grid, many, Eps0Mode::free());
    CHECK(a.theta == b.theta);
    CHECK(b.theta == c.theta);
    CHECK(a.restart_objectives == b.restart_objectives);
    CHECK(a.winning_restart == b.winning_restart);
}

TEST_CASE("objective is invariant under point permutation") {
    auto grid = fixture_grid(fixture("dtd"), MultiplicativeNoise{0.02, 1});
    const ThetaParams theta = fixture("dtd").theta_for_counts();
    const double reference = fit_objective(theta, grid);
    Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        rng.shuffle(grid.points);
        CHECK(fit_objective(theta, grid) == doctest::Approx(reference).epsilon(1e-13));
    }
}

TEST_CASE("permuted input yields the same fit") {
    const auto grid = fixture_grid(fixture("aircraft"), MultiplicativeNoise{0.01, 2});
    auto shuffled = grid;
    Rng rng(3);
    rng.shuffle(shuffled.points);
    const auto a = fit_theta(grid, quick_config(), default_eps0_mode(grid));
    const auto b = fit_theta(shuffled, quick_config(), default_eps0_mode(grid));
    CHECK(a.theta == b.theta);
}

TEST_CASE("free parameter layout round trips") {
    ThetaParams t = fixture("wikitext2").theta();
    const auto free = to_free_parameters(t, Eps0Mode::free());
    REQUIRE(free.size() == 6);
    CHECK(free[0] == doctest::Approx(std::log(t.alpha)));
    const ThetaParams back = from_free_parameters(free, Eps0Mode::free());
    CHECK(back.alpha == doctest::Approx(t.alpha).epsilon(1e-15));
    CHECK(back.eps0 == doctest::Approx(t.eps0).epsilon(1e-15));
    CHECK_FALSE(back.eps0_fixed);
    const auto fixed = to_free_parameters(t, Eps0Mode::fixed(0.5));
    CHECK(fixed.size() == 5);
    CHECK(from_free_parameters(fixed, Eps0Mode::fixed(0.5)).eps0 == 0.5);
}

TEST_CASE("analytic gradient matches central differences") {
    Rng rng(2024);
    int checked = 0;
    for (int draw = 0; draw < 100; ++draw) {
        const bool free_eps0 = draw % 2 == 1;
        const Eps0Mode mode = free_eps0 ? Eps0Mode::free() : Eps0Mode::fixed(rng.uniform(0.5, 1.0));
        ThetaParams truth;
        truth.alpha = rng.uniform(0.2, 1.5);
        truth.beta = rng.uniform(0.2, 1.5);
        truth.b = std::exp(rng.uniform(std::log(0.01), std::log(5.0)));
        truth.c_inf = std::exp(rng.uniform(std::log(1e-3), std::log(2.0)));
        truth.eta = std::exp(rng.uniform(std::log(0.5), std::log(50.0)));
        truth.eps0 = mode.is_fixed() ? mode.value() : rng.uniform(1.0, 8.0);
        const auto levels = decades(0, 3);
        auto grid = synth_landscape(truth, levels, levels, MultiplicativeNoise{0.05, static_cast<std::uint64_t>(draw)});

        std::vector<double> u = to_free_parameters(truth, mode);
        for (auto& v : u) v += rng.uniform(-0.5, 0.5);
        const auto analytic = objective_and_gradient(u, grid, mode);
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double h = 1e-6 * std::max(1.0, std::abs(u[k]));
            auto up = u;
            auto down = u;
            up[k] += h;
            down[k] -= h;
            const double fd = (objective_and_gradient(up, grid, mode).objective -
                               objective_and_gradient(down, grid, mode).objective) /
                              (2 * h);
            const double scale = std::max(std::abs(fd), 1e-6 * std::max(1.0, analytic.objective));
            CHECK(std::abs(analytic.gradient[k] - fd) / scale < 1e-5);
            ++checked;
        }
    }
    CHECK(checked == 50 * 5 + 50 * 6);
}

TEST_CASE("gradient vanishes at the generating theta") {
    const auto& f = fixture("imagenet");
    const auto grid = fixture_grid(f);
    const Eps0Mode mode = Eps0Mode::fixed(f.theta().eps0);
    const auto value = objective_and_gradient(to_free_parameters(f.theta_for_counts(), mode), grid, mode);
    CHECK(value.objective < 1e-20);
    double norm = 0.0;
    for (double g : value.gradient) norm += g * g;
    CHECK(std::sqrt(norm) < 1e-6);

    MeasurementGrid single;
    const auto u = to_free_parameters(symmetric_theta(), Eps0Mode::free());
    const ThetaParams t = from_free_parameters(u, Eps0Mode::free());
    single.points = {{100, 400, eval_envelope(t, 100, 400)}};
    const auto exact = objective_and_gradient(u, single, Eps0Mode::free());
    CHECK(exact.objective == 0.0);
    for (double g : exact.gradient) CHECK(g == 0.0);
}

TEST_CASE("noise robustness over 20 trials") {
    const auto& f = fixture("imagenet");
    const auto truth = fixture_grid(f);
    double total = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto noisy = fixture_grid(f, MultiplicativeNoise{0.01, trial});
        const auto result = fit_theta(noisy, quick_config(), default_eps0_mode(noisy));
        double mean_abs = 0.0;
        for (const auto& p : truth.points) mean_abs += std::abs(divergence(result.theta, p));
        mean_abs /= static_cast<double>(truth.size());
        CAPTURE(trial);
        CHECK(mean_abs < 0.01);
        total += mean_abs;
    }
    CHECK(total / 20 < 0.01);
}

TEST_CASE("invalid configuration") {
    FitConfig config;
    config.restarts = 0;
    CHECK_THROWS_AS(config.validate(), DomainError);
    config = FitConfig{};
    config.objective_tolerance = 0.0;
    CHECK_THROWS_AS(config.validate(), DomainError);
}

TEST_CASE("default eps0 mode") {
    MeasurementGrid grid;
    grid.metric_kind = MetricKind::top1_error;
    grid.num_classes = 10;
    CHECK(default_eps0_mode(grid).is_fixed());
    CHECK(default_eps0_mode(grid).value() == doctest::Approx(0.9));
    grid.metric_kind = MetricKind::cross_entropy;
    CHECK_FALSE(default_eps0_mode(grid).is_fixed());
}

TEST_CASE("fit_slice recovers a saturating power law") {
    const SliceParams truth{SliceAxis::model_axis, 2.0, 0.7, 0.05};
    std::vector<SlicePoint> points;
    for (double s : decades(2, 6)) points.push_back({s, eval_slice(truth, s)});
    const auto fitted = fit_slice(points, SliceAxis::model_axis, quick_config());
    CHECK(fitted.axis == SliceAxis::model_axis);
    for (const auto& p : points) CHECK(std::abs(divergence(eval_slice(fitted, p.size), p.eps)) < 1e-6);
}

TEST_CASE("fit_slice degenerate inputs") {
    std::vector<SlicePoint> three{{10, 0.5}, {100, 0.4}, {1000, 0.3}};
    CHECK_THROWS_AS(fit_slice(three, SliceAxis::data_axis, quick_config()), InsufficientData);

    std::vector<SlicePoint> constant;
    for (double s : decades(1, 5)) constant.push_back({s, 0.5});
    const auto fitted = fit_slice(constant, SliceAxis::data_axis, quick_config());
    for (const auto& p : constant) CHECK(eval_slice(fitted, p.size) == doctest::Approx(0.5).epsilon(1e-6));

    std::vector<SlicePoint> bad{{10, 0.5}, {100, 0.0}, {1000, 0.3}, {1e4, 0.2}};
    CHECK_THROWS_AS(fit_slice(bad, SliceAxis::data_axis, quick_config()), ValidationError);
}
