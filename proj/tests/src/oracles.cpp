#include "oracles.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

namespace {

// polynomial product, index = power of z
std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<double> as_poly(const std::vector<double>& coef, int stride, double sign) {
    std::vector<double> p(1 + coef.size() * static_cast<std::size_t>(stride), 0.0);
    p[0] = 1.0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        p[(i + 1) * static_cast<std::size_t>(stride)] = sign * coef[i];
    }
    return p;
}

} // namespace

std::vector<double> expand_recursion_weights(const std::vector<double>& regular,
                                             const std::vector<double>& seasonal, int period,
                                             bool moving_average) {
    const double sign = moving_average ? 1.0 : -1.0;
    const std::vector<double> prod =
        poly_mul(as_poly(regular, 1, sign), as_poly(seasonal, period, sign));
    std::vector<double> out(prod.begin() + 1, prod.end());
    for (double& c : out) c *= sign;
    while (!out.empty() && out.back() == 0.0) out.pop_back();
    return out;
}

std::vector<double> arma_autocovariance(const std::vector<double>& phi,
                                        const std::vector<double>& theta, double sigma2,
                                        std::size_t max_lag) {
    const std::size_t p = phi.size();
    const std::size_t q = theta.size();
    std::size_t terms = 256;
    std::vector<double> psi;
    for (;;) {
        psi.assign(terms + max_lag + 1, 0.0);
        psi[0] = 1.0;
        for (std::size_t j = 1; j < psi.size(); ++j) {
            double v = j <= q ? theta[j - 1] : 0.0;
            for (std::size_t i = 1; i <= std::min(j, p); ++i) v += phi[i - 1] * psi[j - i];
            psi[j] = v;
        }
        double tail = 0.0;
        for (std::size_t j = psi.size() - 8; j < psi.size(); ++j) tail += psi[j] * psi[j];
        if (tail < 1e-24 || terms >= (1u << 20)) break;
        terms *= 4;
    }
    std::vector<double> gamma(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j + k < psi.size(); ++j) acc += psi[j] * psi[j + k];
        gamma[k] = sigma2 * acc;
    }
    return gamma;
}

double mvn_loglik(const std::vector<double>& w, const std::vector<double>& gamma) {
    const std::size_t n = w.size();
    if (gamma.size() < n) throw std::invalid_argument("need gamma up to lag n-1");
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                gamma[i >= j ? i - j : j - i];
        }
    }
    const Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(n));
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw std::runtime_error("covariance not positive definite");
    double log_det = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        log_det += 2.0 * std::log(llt.matrixL()(static_cast<Eigen::Index>(i),
                                                static_cast<Eigen::Index>(i)));
    }
    const double quad = wv.dot(llt.solve(wv));
    const double ln2pi = std::log(2.0 * M_PI);
    return -0.5 * (static_cast<double>(n) * ln2pi + log_det + quad);
}

double sarima_loglik(const std::vector<double>& y, const boxjenkins::SarimaOrder& order,
                     const std::vector<double>& params, double sigma2) {
    const std::vector<double> w = naive_difference(y, order.d, order.D, order.period);
    auto it = params.begin();
    const std::vector<double> ar(it, it + order.p);
    it += order.p;
    const std::vector<double> ma(it, it + order.q);
    it += order.q;
    const std::vector<double> sar(it, it + order.P);
    it += order.P;
    const std::vector<double> sma(it, it + order.Q);
    const std::vector<double> phi = expand_recursion_weights(ar, sar, order.period, false);
    const std::vector<double> theta = expand_recursion_weights(ma, sma, order.period, true);
    const std::vector<double> gamma =
        arma_autocovariance(phi, theta, sigma2, w.empty() ? 0 : w.size() - 1);
    return mvn_loglik(w, gamma);
}

std::vector<double> brute_force_acf(const std::vector<double>& x, std::size_t max_lag) {
    const std::size_t n = x.size();
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> cov(max_lag + 1, 0.0);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        for (std::size_t t = 0; t + k < n; ++t) cov[k] += (x[t] - mean) * (x[t + k] - mean);
        cov[k] /= static_cast<double>(n);
    }
    std::vector<double> acf(max_lag + 1);
    for (std::size_t k = 0; k <= max_lag; ++k) acf[k] = cov[k] / cov[0];
    return acf;
}

std::vector<double> yule_walker_pacf(const std::vector<double>& acf) {
    std::vector<double> pacf(acf.size(), 1.0);
    for (std::size_t k = 1; k < acf.size(); ++k) {
        const auto ik = static_cast<Eigen::Index>(k);
        Eigen::MatrixXd r(ik, ik);
        Eigen::VectorXd rhs(ik);
        for (Eigen::Index i = 0; i < ik; ++i) {
            rhs(i) = acf[static_cast<std::size_t>(i) + 1];
            for (Eigen::Index j = 0; j < ik; ++j) {
                r(i, j) = acf[static_cast<std::size_t>(std::abs(i - j))];
            }
        }
        pacf[k] = r.colPivHouseholderQr().solve(rhs)(ik - 1);
    }
    return pacf;
}

std::vector<double> naive_difference(const std::vector<double>& x, int d, int seasonal_d,
                                     int period) {
    std::vector<double> out = x;
    for (int pass = 0; pass < d; ++pass) {
        std::vector<double> next;
        for (std::size_t i = 1; i < out.size(); ++i) next.push_back(out[i] - out[i - 1]);
        out = std::move(next);
    }
    const auto s = static_cast<std::size_t>(period);
    for (int pass = 0; pass < seasonal_d; ++pass) {
        std::vector<double> next;
        for (std::size_t i = s; i < out.size(); ++i) next.push_back(out[i] - out[i - s]);
        out = std::move(next);
    }
    return out;
}

} // namespace oracle
