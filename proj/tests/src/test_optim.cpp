#include <cmath>

#include <doctest.h>

#include <Eigen/Core>

#include "boxjenkins/optim.hpp"

using namespace boxjenkins::optim;

namespace {

double quadratic(const Eigen::VectorXd& x) {
    return 2.0 * (x(0) - 1.0) * (x(0) - 1.0) + 5.0 * (x(1) + 3.0) * (x(1) + 3.0) +
           0.5 * x(0) * x(1);
}

double rosenbrock(const Eigen::VectorXd& x) {
    const double a = 1.0 - x(0);
    const double b = x(1) - x(0) * x(0);
    return a * a + 100.0 * b * b;
}

} // namespace

TEST_SUITE_BEGIN("optim");

TEST_CASE("numerical_gradient matches analytic derivatives") {
    Eigen::VectorXd x(2);
    x << 0.7, -1.2;
    const Eigen::VectorXd g = numerical_gradient(quadratic, x);
    CHECK(g(0) == doctest::Approx(4.0 * (x(0) - 1.0) + 0.5 * x(1)).epsilon(1e-6));
    CHECK(g(1) == doctest::Approx(10.0 * (x(1) + 3.0) + 0.5 * x(0)).epsilon(1e-6));
}

TEST_CASE("numerical_hessian matches analytic second derivatives") {
    Eigen::VectorXd x(2);
    x << 0.3, 2.0;
    const Eigen::MatrixXd h = numerical_hessian(quadratic, x);
    CHECK(h(0, 0) == doctest::Approx(4.0).epsilon(1e-5));
    CHECK(h(1, 1) == doctest::Approx(10.0).epsilon(1e-5));
    CHECK(h(0, 1) == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(h(0, 1) == h(1, 0)); // symmetrized
}

TEST_CASE("bfgs minimizes a convex quadratic") {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
    const Result r = minimize_bfgs(quadratic, x0);
    CHECK(r.converged);
    // stationary point of 4(x-1)+y/2 = 0, 10(y+3)+x/2 = 0
    CHECK(r.x(0) == doctest::Approx(110.0 / 79.5).epsilon(1e-5));
    CHECK(r.x(1) == doctest::Approx(8.0 - 8.0 * 110.0 / 79.5).epsilon(1e-5));
}

TEST_CASE("nelder_mead minimizes without gradients") {
    // +1 keeps the minimum away from zero so the relative stop rule is sane
    const auto shifted = [](const Eigen::VectorXd& x) { return rosenbrock(x) + 1.0; };
    Eigen::VectorXd x0(2);
    x0 << -1.0, 2.0;
    Options opts;
    opts.max_iterations = 5000;
    const Result r = minimize_nelder_mead(shifted, x0, opts);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("minimize reaches the rosenbrock minimum") {
    Eigen::VectorXd x0(2);
    x0 << -1.2, 1.0;
    const Result r = minimize(rosenbrock, x0);
    CHECK(r.value < 1e-6);
    CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("iteration budget is honoured") {
    Eigen::VectorXd x0(2);
    x0 << -1.2, 1.0;
    Options opts;
    opts.max_iterations = 1;
    const Result bfgs = minimize_bfgs(rosenbrock, x0, opts);
    CHECK(bfgs.iterations <= 1);
    const Result nm = minimize_nelder_mead(rosenbrock, x0, opts);
    CHECK(nm.iterations <= 1);
    CHECK_FALSE(nm.converged);
}

TEST_CASE("zero-dimensional problems are trivially converged") {
    const Result r = minimize_bfgs([](const Eigen::VectorXd&) { return 3.0; },
                                   Eigen::VectorXd());
    CHECK(r.converged);
    CHECK(r.value == 3.0);
}

TEST_SUITE_END();
