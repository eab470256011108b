#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "scalefit/cli.hpp"
#include "scalefit/errors.hpp"
#include "scalefit/io.hpp"
#include "scalefit/report.hpp"

using namespace scalefit;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "scalefit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "scalefit_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double max_abs_delta(const std::filesystem::path& report) {
    const auto doc = parse_report(slurp(report));
    double worst = 0.0;
    for (const auto& p : doc.stats->per_point) worst = std::max(worst, std::abs(p.delta));
    return worst;
}

}  // namespace

TEST_CASE("synth then fit recovers ImageNet") {
    const auto grid = scratch("imagenet.csv").string();
    const auto report = scratch("imagenet_fit.json").string();
    const auto synth = run({"synth", "--theta", "imagenet", "--out", grid});
    REQUIRE(synth.code == 0);
    CHECK(load_measurements(std::filesystem::path(grid)).size() == 49);
    const auto fit = run({"fit", "--input", grid, "--eps0", "0.999", "--restarts", "20", "--out", report});
    CHECK(fit.code == 0);
    CHECK(fit.out.find("objective") != std::string::npos);
    CHECK(max_abs_delta(report) < 5e-3);
}

TEST_CASE("fit on a three-row file is a numerical failure") {
    const auto path = scratch("three.csv");
    write_file_atomic(path, "m,n,error\n10,10,0.5\n100,10,0.4\n10,100,0.3\n");
    const auto result = run({"fit", "--input", path.string()});
    CHECK(result.code == 2);
    CHECK(result.err.find("measurements") != std::string::npos);
}

TEST_CASE("input errors exit with 1") {
    CHECK(run({"fit", "--input", "/nonexistent.csv"}).code == 1);
    const auto path = scratch("dup.csv");
    write_file_atomic(path, "m,n,error\n10,10,0.5\n10,10,0.4\n");
    CHECK(run({"fit", "--input", path.string()}).code == 1);
    CHECK(run({"fit"}).code == 1);
    CHECK(run({"nonsense"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("design answers for the symmetric theta") {
    const auto theta = scratch("symmetric.json");
    write_file_atomic(theta, R"({"alpha":0.5,"beta":0.5,"b":1,"c_inf":0,"eta":10,"eps0":1})");
    const auto optimal = run({"design", "--theta-json", theta.string(), "--optimal", "--contour", "0.02"});
    REQUIRE(optimal.code == 0);
    const std::regex m_line(R"(m = (\S+))");
    const std::regex n_line(R"(n = (\S+))");
    std::smatch match;
    REQUIRE(std::regex_search(optimal.out, match, m_line));
    CHECK(std::stod(match[1]) == doctest::Approx(1e4).epsilon(1e-9));
    REQUIRE(std::regex_search(optimal.out, match, n_line));
    CHECK(std::stod(match[1]) == doctest::Approx(1e4).epsilon(1e-9));

    const auto mmax = run({"design", "--theta-json", theta.string(), "--mmax", "--nlim", "1e4", "--T", "10"});
    REQUIRE(mmax.code == 0);
    REQUIRE(std::regex_search(mmax.out, match, m_line));
    CHECK(std::stod(match[1]) == doctest::Approx(1e6).epsilon(1e-9));

    const auto ladder = run({"design", "--theta-json", theta.string(), "--optimal", "--contour", "0.02", "--round",
                             "ladder", "--ladder", "1000,8000,30000"});
    REQUIRE(ladder.code == 0);
    CHECK(ladder.out.find("(rung 8000)") != std::string::npos);

    CHECK(run({"design", "--theta-json", theta.string(), "--mmax", "--nlim", "1e4", "--T", "0.5"}).code == 1);
    CHECK(run({"design", "--theta-json", theta.string(), "--target-eps", "1.5", "--optimal"}).code == 2);
    CHECK(run({"design", "--theta-json", theta.string(), "--m-given-n", "100", "--contour", "0.05"}).code == 2);
}

TEST_CASE("crossval, extrapolate, sweep and slice run") {
    const auto grid = scratch("noisy.csv").string();
    REQUIRE(run({"synth", "--theta", "imagenet", "--noise", "0.01", "--seed", "3", "--out", grid}).code == 0);
    const auto cv = run({"crossval", "--input", grid, "--folds", "5", "--restarts", "5"});
    CHECK(cv.code == 0);
    CHECK(cv.out.find("sigma") != std::string::npos);
    const auto ex = run({"extrapolate", "--input", grid, "--cut-m", "1593750", "--cut-n", "160000", "--restarts", "5"});
    CHECK(ex.code == 0);
    const auto csv = scratch("sweep.csv").string();
    const auto sweep = run({"sweep", "--input", grid, "--restarts", "3", "--csv-out", csv});
    CHECK(sweep.code == 0);
    CHECK(slurp(csv).find("cut_m") != std::string::npos);
    const auto slice = run({"slice", "--input", grid, "--axis", "model", "--fix-n", "1280000"});
    CHECK(slice.code == 0);
    CHECK(slice.out.find("exponent") != std::string::npos);
    CHECK(run({"slice", "--input", grid, "--axis", "model", "--fix-n", "17"}).code != 0);
    CHECK(run({"fixtures"}).out.find("wikitext103") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    const auto grid = scratch("det.csv").string();
    REQUIRE(run({"synth", "--theta", "ptb", "--noise", "0.02", "--seed", "11", "--out", grid}).code == 0);
    std::vector<std::string> reports;
    for (const char* threads : {"1", "1", "3", "8"}) {
        const auto out = scratch(std::string("det_") + threads + ".json").string();
        REQUIRE(run({"fit", "--input", grid, "--eps0-free", "--restarts", "12", "--seed", "5", "--threads", threads,
                     "--out", out})
                    .code == 0);
        reports.push_back(slurp(out));
    }
    for (const auto& r : reports) CHECK(r == reports.front());
}

TEST_CASE("installed executable") {
    const std::string cmd = std::string(SCALEFIT_CLI_PATH) + " fixtures > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
}
