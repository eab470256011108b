#include "scalefit/least_squares.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

namespace scalefit {

namespace {

Eigen::VectorXd project(const Eigen::VectorXd& x, const LevenbergMarquardtOptions& opt) {
    Eigen::VectorXd out = x;
    if (opt.lower.size() == x.size()) out = out.cwiseMax(opt.lower);
    if (opt.upper.size() == x.size()) out = out.cwiseMin(opt.upper);
    return out;
}

constexpr double kMaxDamping = 1e20;
constexpr double kNegligibleCost = 1e-32;

}  // namespace

LevenbergMarquardtResult levenberg_marquardt(const ResidualFunction& fn, Eigen::VectorXd x0,
                                             const LevenbergMarquardtOptions& options) {
    LevenbergMarquardtResult result;
    Eigen::VectorXd x = project(x0, options);
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    if (!fn(x, r, &jac)) {
        result.x = x;
        result.cost = std::numeric_limits<double>::infinity();
        return result;
    }
    const Eigen::Index p = x.size();
    const Eigen::Index rows = r.size();
    double cost = r.squaredNorm();

    Eigen::VectorXd scale = jac.colwise().squaredNorm().transpose().cwiseMax(1e-12);
    double lambda = 1e-3;
    double nu = 2.0;

    Eigen::MatrixXd augmented(rows + p, p);
    Eigen::VectorXd rhs(rows + p);
    Eigen::VectorXd r_trial;
    Eigen::MatrixXd jac_trial;

    int iter = 0;
    while (iter < options.max_iterations && cost > kNegligibleCost) {
        ++iter;
        augmented.topRows(rows) = jac;
        augmented.bottomRows(p) = (lambda * scale).cwiseSqrt().asDiagonal();
        rhs.head(rows) = -r;
        rhs.tail(p).setZero();
        const Eigen::VectorXd raw_step = augmented.householderQr().solve(rhs);
        const Eigen::VectorXd x_trial = project(x + raw_step, options);
        const Eigen::VectorXd step = x_trial - x;

        if (!step.allFinite()) {
            lambda *= nu;
            nu *= 2.0;
            if (lambda > kMaxDamping) break;
            continue;
        }
        if (step.norm() <= options.step_tolerance * (x.norm() + options.step_tolerance)) break;

        if (!fn(x_trial, r_trial, &jac_trial)) {
            lambda *= nu;
            nu *= 2.0;
            if (lambda > kMaxDamping) break;
            continue;
        }
        const double cost_trial = r_trial.squaredNorm();
        const double predicted = cost - (r + jac * step).squaredNorm();

        if (cost_trial < cost) {
            const double rho = predicted > 0.0 ? (cost - cost_trial) / predicted : 0.0;
            const double relative_decrease = (cost - cost_trial) / cost;
            x = x_trial;
            r.swap(r_trial);
            jac.swap(jac_trial);
            cost = cost_trial;
            scale = scale.cwiseMax(jac.colwise().squaredNorm().transpose());
            lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
            lambda = std::max(lambda, 1e-15);
            nu = 2.0;
            if (relative_decrease < options.objective_tolerance) break;
        } else {
            lambda *= nu;
            nu *= 2.0;
            if (lambda > kMaxDamping) break;
        }
    }

    result.x = x;
    result.cost = cost;
    result.iterations = iter;
    result.finite = std::isfinite(cost);
    return result;
}

}  // namespace scalefit
