#include <doctest.h>

#include <cmath>
#include <limits>

#include "scalefit/errors.hpp"
#include "scalefit/fixtures.hpp"
#include "scalefit/report.hpp"
#include "support.hpp"

using namespace scalefit;
using nlohmann::json;

namespace {

FitConfig quick_config() {
    FitConfig config;
    config.restarts = 8;
    config.threads = 1;
    return config;
}

}  // namespace

TEST_CASE("theta round trip") {
    const ThetaParams t = fixture("wikitext2").theta_for_counts();
    const json j = t;
    CHECK(j.get<ThetaParams>() == t);
}

TEST_CASE("full report round trip") {
    const auto grid = testing::fixture_grid(fixture("imagenet"), MultiplicativeNoise{0.01, 1});
    ReportDocument doc;
    doc.meta.command = "fit";
    doc.meta.seed = 7;
    doc.meta.config = quick_config();
    doc.fit = fit_theta(grid, quick_config(), default_eps0_mode(grid));
    doc.fit->restart_objectives[1] = std::numeric_limits<double>::infinity();
    doc.stats = divergence_stats(doc.fit->theta, grid);
    doc.design_answers.push_back(compute_optimal_split(doc.fit->theta, 1e-3));
    doc.design_answers.push_back(contour_sweep(doc.fit->theta, 1e-3, 4));
    const Cut cut{std::round(25.5e6 / 16), 160000};
    doc.extrapolations.push_back(extrapolate_once(grid, cut, quick_config(), default_eps0_mode(grid)));
    doc.slice = SliceParams{SliceAxis::data_axis, 1.5, 0.3, 0.01};

    const std::string text = serialize(doc);
    const ReportDocument back = parse_report(text);
    CHECK(serialize(back) == text);
    CHECK(back.fit->theta == doc.fit->theta);
    CHECK(std::isinf(back.fit->restart_objectives[1]));
    CHECK(back.stats->mu == doc.stats->mu);
    CHECK(back.extrapolations[0].fit->theta == doc.extrapolations[0].fit->theta);
    CHECK(back.design_answers[1].contour.size() == 4);
    CHECK(back.slice->axis == SliceAxis::data_axis);

    const json j = json::parse(text);
    CHECK(j["version"] == kReportVersion);
    CHECK(j.contains("theta"));
    CHECK(j["fit"]["restart_objectives"][1].is_null());
    CHECK_FALSE(j.contains("timestamp"));
}

TEST_CASE("theta_from_json accepts reports, bare theta and scaled theta") {
    const auto& f = fixture("cifar100");
    const ThetaParams raw = f.theta_for_counts();
    ReportDocument doc;
    FitResult fit;
    fit.theta = raw;
    doc.fit = fit;
    CHECK(theta_from_json(json::parse(serialize(doc))) == raw);
    CHECK(theta_from_json(json(raw)) == raw);

    json scaled = f.theta();
    scaled["size_scale"] = {{"m_ref", f.full_m}, {"n_ref", f.full_n}};
    const ThetaParams converted = theta_from_json(scaled);
    CHECK(converted.b == doctest::Approx(raw.b).epsilon(1e-14));
    CHECK(converted.eta == doctest::Approx(raw.eta).epsilon(1e-14));

    CHECK_THROWS_AS(theta_from_json(json::parse(R"({"alpha": 1})")), ValidationError);
    CHECK_THROWS_AS(theta_from_json(json::parse("[1, 2]")), ValidationError);
}
