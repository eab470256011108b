#pragma once

#include <Eigen/Core>
#include <functional>

namespace scalefit {

/// Evaluates residuals r(x) and, when `jacobian` is non-null, dr/dx.
/// Returns false if any value is non-finite.
using ResidualFunction =
    std::function<bool(const Eigen::VectorXd& x, Eigen::VectorXd& residuals, Eigen::MatrixXd* jacobian)>;

struct LevenbergMarquardtOptions {
    int max_iterations = 2000;
    double objective_tolerance = 1e-12;  ///< relative decrease of the cost on an accepted step
    double step_tolerance = 1e-10;       ///< norm of the step relative to (|x| + tol)
    Eigen::VectorXd lower;               ///< box constraints, same size as x
    Eigen::VectorXd upper;
};

struct LevenbergMarquardtResult {
    Eigen::VectorXd x;
    double cost = 0.0;  ///< sum of squared residuals at x
    int iterations = 0;
    bool finite = false;
};

/// Damped Gauss-Newton with Marquardt diagonal scaling and Nielsen's damping
/// update. Trial points are projected onto the box [lower, upper]. Each step
/// solves the augmented system [J; sqrt(lambda D)] dx = [-r; 0] by QR.
LevenbergMarquardtResult levenberg_marquardt(const ResidualFunction& fn, Eigen::VectorXd x0,
                                             const LevenbergMarquardtOptions& options);

}  // namespace scalefit
