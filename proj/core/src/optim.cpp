#include "boxjenkins/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace boxjenkins::optim {

Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = rel_step * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + h;
        const double fp = f(xp);
        xp(i) = x(i) - h;
        const double fm = f(xp);
        xp(i) = x(i);
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

Eigen::MatrixXd numerical_hessian(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
    const Eigen::Index n = x.size();
    Eigen::MatrixXd h_mat(n, n);
    Eigen::VectorXd steps(n);
    for (Eigen::Index i = 0; i < n; ++i) steps(i) = rel_step * std::max(1.0, std::abs(x(i)));

    const double f0 = f(x);
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        xp(i) = x(i) + steps(i);
        const double fp = f(xp);
        xp(i) = x(i) - steps(i);
        const double fm = f(xp);
        xp(i) = x(i);
        h_mat(i, i) = (fp - 2.0 * f0 + fm) / (steps(i) * steps(i));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            xp(i) = x(i) + steps(i);
            xp(j) = x(j) + steps(j);
            const double fpp = f(xp);
            xp(j) = x(j) - steps(j);
            const double fpm = f(xp);
            xp(i) = x(i) - steps(i);
            const double fmm = f(xp);
            xp(j) = x(j) + steps(j);
            const double fmp = f(xp);
            xp(i) = x(i);
            xp(j) = x(j);
            const double v = (fpp - fpm - fmp + fmm) / (4.0 * steps(i) * steps(j));
            h_mat(i, j) = v;
            h_mat(j, i) = v;
        }
    }
    return h_mat;
}

Result minimize_bfgs(const Objective& f, Eigen::VectorXd x0, const Options& opts) {
    const Eigen::Index n = x0.size();
    Result result;
    result.x = x0;
    result.value = f(x0);
    if (!std::isfinite(result.value)) return result;
    if (n == 0) {
        result.converged = true;
        return result;
    }

    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g = numerical_gradient(f, result.x, opts.gradient_step);

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        result.iterations = iter + 1;
        Eigen::VectorXd dir = -(h_inv * g);
        if (dir.dot(g) >= 0.0) {
            // Not a descent direction; reset the curvature estimate.
            h_inv.setIdentity();
            dir = -g;
        }

        // Armijo backtracking.
        double alpha = 1.0;
        const double slope = g.dot(dir);
        double f_new = std::numeric_limits<double>::infinity();
        Eigen::VectorXd x_new;
        bool accepted = false;
        for (int bt = 0; bt < 50; ++bt) {
            x_new = result.x + alpha * dir;
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= result.value + 1e-4 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) return result; // stalled; caller may fall back

        const Eigen::VectorXd g_new = numerical_gradient(f, x_new, opts.gradient_step);
        const Eigen::VectorXd s = x_new - result.x;
        const Eigen::VectorXd yv = g_new - g;
        const double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
            h_inv = (eye - rho * s * yv.transpose()) * h_inv * (eye - rho * yv * s.transpose()) +
                    rho * s * s.transpose();
        }

        const double decrease = result.value - f_new;
        const double step_norm = s.norm();
        result.x = x_new;
        result.value = f_new;
        g = g_new;

        if (decrease <= opts.rel_tolerance * (std::abs(f_new) + 1e-12) ||
            step_norm <= opts.step_tolerance * (1.0 + result.x.norm())) {
            result.converged = true;
            return result;
        }
    }
    return result;
}

Result minimize_nelder_mead(const Objective& f, Eigen::VectorXd x0, const Options& opts) {
    const Eigen::Index n = x0.size();
    Result result;
    result.x = x0;
    result.value = f(x0);
    if (n == 0 || !std::isfinite(result.value)) {
        result.converged = n == 0;
        return result;
    }

    const std::size_t m = static_cast<std::size_t>(n) + 1;
    std::vector<Eigen::VectorXd> pts(m, x0);
    std::vector<double> vals(m);
    vals[0] = result.value;
    for (std::size_t i = 1; i < m; ++i) {
        const Eigen::Index c = static_cast<Eigen::Index>(i) - 1;
        pts[i](c) += x0(c) != 0.0 ? 0.1 * std::abs(x0(c)) : 0.1;
        vals[i] = f(pts[i]);
    }

    std::vector<std::size_t> idx(m);
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        result.iterations = iter + 1;
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = idx[0];
        const std::size_t worst = idx[m - 1];
        const std::size_t second_worst = idx[m - 2];

        if (std::isfinite(vals[best]) &&
            vals[worst] - vals[best] <= opts.rel_tolerance * (std::abs(vals[best]) + 1e-12)) {
            result.x = pts[best];
            result.value = vals[best];
            result.converged = true;
            return result;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < m; ++i) {
            if (i != worst) centroid += pts[i];
        }
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
        const double f_r = f(reflected);
        if (f_r < vals[idx[0]]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
            const double f_e = f(expanded);
            if (f_e < f_r) {
                pts[worst] = expanded;
                vals[worst] = f_e;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_r;
            }
            continue;
        }
        if (f_r < vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = f_r;
            continue;
        }
        const Eigen::VectorXd contracted = centroid + 0.5 * (pts[worst] - centroid);
        const double f_c = f(contracted);
        if (f_c < vals[worst]) {
            pts[worst] = contracted;
            vals[worst] = f_c;
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            vals[i] = f(pts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    result.x = pts[best];
    result.value = vals[best];
    return result;
}

Result minimize(const Objective& f, Eigen::VectorXd x0, const Options& opts) {
    Result bfgs = minimize_bfgs(f, std::move(x0), opts);
    if (bfgs.converged) return bfgs;
    Result nm = minimize_nelder_mead(f, bfgs.x, opts);
    nm.iterations += bfgs.iterations;
    if (nm.value <= bfgs.value) return nm;
    bfgs.iterations = nm.iterations;
    return bfgs;
}

} // namespace boxjenkins::optim
