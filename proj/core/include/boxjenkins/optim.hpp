#pragma once

#include <functional>

#include <Eigen/Core>

namespace boxjenkins::optim {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct Options {
    int max_iterations = 500;
    double gradient_step = 1e-6; ///< relative central-difference step
    double rel_tolerance = 1e-8; ///< relative decrease in f considered converged
    double step_tolerance = 1e-6;
};

struct Result {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Central-difference gradient with per-coordinate step rel_step*max(1,|x_i|).
Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x,
                                   double rel_step = 1e-6);

/// Central-difference Hessian (symmetric by construction).
Eigen::MatrixXd numerical_hessian(const Objective& f, const Eigen::VectorXd& x,
                                  double rel_step = 1e-4);

Result minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const Options& opts = {});
Result minimize_nelder_mead(const Objective& f, Eigen::VectorXd x0, const Options& opts = {});

/// BFGS with a Nelder-Mead restart if the line search stalls before convergence.
Result minimize(const Objective& f, Eigen::VectorXd x0, const Options& opts = {});

} // namespace boxjenkins::optim
