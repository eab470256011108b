#include <doctest.h>

#include <cmath>

#include <Eigen/Cholesky>

#include "scalefit/least_squares.hpp"

using namespace scalefit;

namespace {

LevenbergMarquardtOptions wide_box(Eigen::Index dims) {
    LevenbergMarquardtOptions options;
    options.lower = Eigen::VectorXd::Constant(dims, -1e6);
    options.upper = Eigen::VectorXd::Constant(dims, 1e6);
    return options;
}

}  // namespace

TEST_CASE("linear least squares converges to the normal-equation solution") {
    Eigen::MatrixXd a(4, 2);
    a << 1, 0, 1, 1, 1, 2, 1, 3;
    Eigen::VectorXd y(4);
    y << 1.0, 2.9, 5.1, 7.0;
    const ResidualFunction fn = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        r = a * x - y;
        if (jac) *jac = a;
        return true;
    };
    const auto result = levenberg_marquardt(fn, Eigen::VectorXd::Zero(2), wide_box(2));
    const Eigen::VectorXd expected = (a.transpose() * a).ldlt().solve(a.transpose() * y);
    CHECK(result.finite);
    CHECK(result.x(0) == doctest::Approx(expected(0)).epsilon(1e-9));
    CHECK(result.x(1) == doctest::Approx(expected(1)).epsilon(1e-9));
}

TEST_CASE("Rosenbrock residuals reach the minimum") {
    const ResidualFunction fn = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        r.resize(2);
        r << 10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0);
        if (jac) {
            jac->resize(2, 2);
            *jac << -20.0 * x(0), 10.0, -1.0, 0.0;
        }
        return true;
    };
    Eigen::VectorXd x0(2);
    x0 << -1.2, 1.0;
    const auto result = levenberg_marquardt(fn, x0, wide_box(2));
    CHECK(result.cost < 1e-20);
    CHECK(result.x(0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(result.x(1) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("box constraints are respected") {
    const ResidualFunction fn = [](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        r = x - Eigen::VectorXd::Constant(1, 5.0);
        if (jac) *jac = Eigen::MatrixXd::Identity(1, 1);
        return true;
    };
    LevenbergMarquardtOptions options = wide_box(1);
    options.upper(0) = 2.0;
    const auto result = levenberg_marquardt(fn, Eigen::VectorXd::Zero(1), options);
    CHECK(result.x(0) <= 2.0);
    CHECK(result.x(0) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("non-finite start is reported") {
    const ResidualFunction fn = [](const Eigen::VectorXd&, Eigen::VectorXd& r, Eigen::MatrixXd*) {
        r = Eigen::VectorXd::Constant(1, std::nan(""));
        return false;
    };
    const auto result = levenberg_marquardt(fn, Eigen::VectorXd::Zero(1), wide_box(1));
    CHECK_FALSE(result.finite);
}
