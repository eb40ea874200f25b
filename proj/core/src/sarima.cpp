#include "boxjenkins/sarima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "boxjenkins/dist.hpp"
#include "boxjenkins/optim.hpp"
#include "boxjenkins/transform.hpp"

namespace boxjenkins {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2Pi = 1.8378770664093454836; // ln(2*pi)

struct CoefBlocks {
    std::vector<double> ar;
    std::vector<double> ma;
    std::vector<double> sar;
    std::vector<double> sma;
};

CoefBlocks split_params(const SarimaOrder& order, std::span<const double> params) {
    if (params.size() != static_cast<std::size_t>(order.coefficient_count())) {
        throw std::invalid_argument("expected " + std::to_string(order.coefficient_count()) +
                                    " coefficients, got " + std::to_string(params.size()));
    }
    CoefBlocks b;
    auto it = params.begin();
    b.ar.assign(it, it + order.p);
    it += order.p;
    b.ma.assign(it, it + order.q);
    it += order.q;
    b.sar.assign(it, it + order.P);
    it += order.P;
    b.sma.assign(it, it + order.Q);
    return b;
}

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

/// Expanded ARMA coefficients in the convention
///   w_t = sum phi_i w_{t-i} + e_t + sum theta_j e_{t-j}.
struct Expanded {
    std::vector<double> phi;   // length p + s*P
    std::vector<double> theta; // length q + s*Q
};

Expanded expand_model(const SarimaOrder& order, const CoefBlocks& b) {
    // AR side: (1 - sum ar_i B^i)(1 - sum sar_j B^{js})
    std::vector<double> pa(static_cast<std::size_t>(order.p) + 1, 0.0);
    pa[0] = 1.0;
    for (int i = 0; i < order.p; ++i) pa[static_cast<std::size_t>(i) + 1] = -b.ar[static_cast<std::size_t>(i)];
    std::vector<double> psa(static_cast<std::size_t>(order.P) * order.period + 1, 0.0);
    psa[0] = 1.0;
    for (int j = 0; j < order.P; ++j) {
        psa[static_cast<std::size_t>(j + 1) * order.period] = -b.sar[static_cast<std::size_t>(j)];
    }
    const std::vector<double> ar_poly = poly_multiply(pa, psa);

    // MA side: (1 + sum ma_i B^i)(1 + sum sma_j B^{js})
    std::vector<double> pm(static_cast<std::size_t>(order.q) + 1, 0.0);
    pm[0] = 1.0;
    for (int i = 0; i < order.q; ++i) pm[static_cast<std::size_t>(i) + 1] = b.ma[static_cast<std::size_t>(i)];
    std::vector<double> psm(static_cast<std::size_t>(order.Q) * order.period + 1, 0.0);
    psm[0] = 1.0;
    for (int j = 0; j < order.Q; ++j) {
        psm[static_cast<std::size_t>(j + 1) * order.period] = b.sma[static_cast<std::size_t>(j)];
    }
    const std::vector<double> ma_poly = poly_multiply(pm, psm);

    Expanded e;
    e.phi.assign(ar_poly.begin() + 1, ar_poly.end());
    for (double& c : e.phi) c = -c;
    e.theta.assign(ma_poly.begin() + 1, ma_poly.end());
    return e;
}

/// Spectral radius of the companion matrix of x_t = sum c_i x_{t-i}; the
/// recursion is stable iff this is < 1 (all polynomial roots outside the
/// unit circle).
double companion_spectral_radius(std::span<const double> coef) {
    std::size_t k = coef.size();
    while (k > 0 && coef[k - 1] == 0.0) --k;
    if (k == 0) return 0.0;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) c(0, static_cast<Eigen::Index>(i)) = coef[i];
    for (std::size_t i = 1; i < k; ++i) {
        c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i) - 1) = 1.0;
    }
    return c.eigenvalues().cwiseAbs().maxCoeff();
}

bool ar_stable(std::span<const double> coef) {
    return companion_spectral_radius(coef) < 1.0 - 1e-10;
}

bool ma_invertible(std::span<const double> coef) {
    std::vector<double> neg(coef.begin(), coef.end());
    for (double& c : neg) c = -c;
    // MA estimates pile up on the unit circle (the tanh parametrization can
    // saturate there to full double precision) and the filter stays well
    // defined, so unlike the AR side, tolerate the boundary and reject only
    // roots clearly inside radius one.
    return companion_spectral_radius(neg) < 1.0 + 1e-8;
}

void validate_coefficients(const CoefBlocks& b) {
    if (!ar_stable(b.ar)) throw std::domain_error("AR polynomial is not stationary");
    if (!ar_stable(b.sar)) throw std::domain_error("seasonal AR polynomial is not stationary");
    if (!ma_invertible(b.ma)) throw std::domain_error("MA polynomial is not invertible");
    if (!ma_invertible(b.sma)) throw std::domain_error("seasonal MA polynomial is not invertible");
}

/// Harvey state-space form of the expanded ARMA: state dimension
/// r = max(p~, q~+1), transition with phi~ down the first column and an
/// identity superdiagonal, innovation loading R = (1, theta~_1, ...),
/// observation = first state component.
struct StateSpace {
    Eigen::Index r = 0;
    Eigen::MatrixXd t_mat;
    Eigen::VectorXd r_vec;
};

StateSpace build_state_space(const Expanded& e) {
    const auto pp = static_cast<Eigen::Index>(e.phi.size());
    const auto qq = static_cast<Eigen::Index>(e.theta.size());
    StateSpace ss;
    ss.r = std::max(pp, qq + 1);
    ss.t_mat = Eigen::MatrixXd::Zero(ss.r, ss.r);
    for (Eigen::Index i = 0; i < pp; ++i) ss.t_mat(i, 0) = e.phi[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < ss.r; ++i) ss.t_mat(i, i + 1) = 1.0;
    ss.r_vec = Eigen::VectorXd::Zero(ss.r);
    ss.r_vec(0) = 1.0;
    for (Eigen::Index j = 0; j < qq; ++j) ss.r_vec(j + 1) = e.theta[static_cast<std::size_t>(j)];
    return ss;
}

/// Stationary state covariance: solve (I - T (x) T) vec(P) = vec(R R') with a
/// dense LU (r <= ~15 for the orders this library targets).
Eigen::MatrixXd stationary_covariance(const StateSpace& ss) {
    const Eigen::Index r = ss.r;
    const Eigen::Index rr = r * r;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rr, rr);
    for (Eigen::Index bcol = 0; bcol < r; ++bcol) {
        for (Eigen::Index arow = 0; arow < r; ++arow) {
            for (Eigen::Index dcol = 0; dcol < r; ++dcol) {
                for (Eigen::Index crow = 0; crow < r; ++crow) {
                    a(bcol * r + arow, dcol * r + crow) = ss.t_mat(bcol, dcol) * ss.t_mat(arow, crow);
                }
            }
        }
    }
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(rr, rr) - a;
    Eigen::VectorXd rhs(rr);
    for (Eigen::Index j = 0; j < r; ++j) {
        for (Eigen::Index i = 0; i < r; ++i) rhs(j * r + i) = ss.r_vec(i) * ss.r_vec(j);
    }
    const Eigen::VectorXd vec_p = lhs.partialPivLu().solve(rhs);
    Eigen::MatrixXd p(r, r);
    for (Eigen::Index j = 0; j < r; ++j) {
        for (Eigen::Index i = 0; i < r; ++i) p(i, j) = vec_p(j * r + i);
    }
    p = 0.5 * (p + p.transpose()).eval();
    if (!p.allFinite()) throw std::runtime_error("stationary covariance solve failed");
    return p;
}

/// One Kalman sweep over the differenced series with sigma2 concentrated out
/// (all covariances in units of sigma2, so F_t >= 1).
struct FilterRun {
    std::vector<double> v; ///< one-step innovations
    std::vector<double> f; ///< normalized innovation variances
    double sum_log_f = 0.0;
    double sum_sq = 0.0; ///< sum v^2 / F
    Eigen::VectorXd state;      ///< filtered state after the last observation
    Eigen::MatrixXd state_cov;  ///< its covariance (units of sigma2)
};

FilterRun run_filter(const StateSpace& ss, std::span<const double> w) {
    const Eigen::Index r = ss.r;
    const Eigen::MatrixXd rrt = ss.r_vec * ss.r_vec.transpose();
    Eigen::VectorXd a = Eigen::VectorXd::Zero(r);
    Eigen::MatrixXd p = stationary_covariance(ss);

    FilterRun out;
    out.v.resize(w.size());
    out.f.resize(w.size());
    Eigen::VectorXd a_next(r);
    Eigen::MatrixXd tp(r, r);
    Eigen::VectorXd pz(r);
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t > 0) {
            a_next.noalias() = ss.t_mat * a;
            a = a_next;
            tp.noalias() = ss.t_mat * p;
            p.noalias() = tp * ss.t_mat.transpose();
            p += rrt;
        }
        const double f = p(0, 0);
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw std::runtime_error("Kalman prediction variance lost positive definiteness");
        }
        const double v = w[t] - a(0);
        out.v[t] = v;
        out.f[t] = f;
        out.sum_log_f += std::log(f);
        out.sum_sq += v * v / f;

        pz = p.col(0);
        a += pz * (v / f);
        p.noalias() -= (pz * pz.transpose()) / f;
    }
    out.state = std::move(a);
    out.state_cov = std::move(p);
    return out;
}

double concentrated_loglik(const FilterRun& fr, std::size_t n) {
    const double s2 = fr.sum_sq / static_cast<double>(n);
    return -0.5 * static_cast<double>(n) * (kLn2Pi + 1.0 + std::log(s2)) - 0.5 * fr.sum_log_f;
}

double loglik_at(const FilterRun& fr, std::size_t n, double sigma2) {
    return -0.5 * static_cast<double>(n) * (kLn2Pi + std::log(sigma2)) - 0.5 * fr.sum_log_f -
           0.5 * fr.sum_sq / sigma2;
}

// ---- unconstrained parametrization -----------------------------------------
//
// Each block of raw optimizer variables maps through tanh to partial
// autocorrelations and then through the Durbin-Levinson recursion to AR
// coefficients; every raw point yields a stationary polynomial and the map is
// onto the stationary region. MA blocks use the negated image, whose
// polynomials 1 + sum theta_j B^j are exactly the invertible ones.

std::vector<double> pacf_to_ar(std::vector<double> w) {
    const std::size_t k = w.size();
    std::vector<double> tmp(k);
    for (std::size_t j = 1; j < k; ++j) {
        const double a = w[j];
        for (std::size_t i = 0; i < j; ++i) tmp[i] = w[i] - a * w[j - 1 - i];
        std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(j), w.begin());
    }
    return w;
}

CoefBlocks blocks_from_raw(const SarimaOrder& order, const Eigen::VectorXd& raw) {
    auto take = [&raw](Eigen::Index offset, int count) {
        std::vector<double> w(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) w[static_cast<std::size_t>(i)] = std::tanh(raw(offset + i));
        return pacf_to_ar(std::move(w));
    };
    CoefBlocks b;
    Eigen::Index at = 0;
    b.ar = take(at, order.p);
    at += order.p;
    b.ma = take(at, order.q);
    for (double& c : b.ma) c = -c;
    at += order.q;
    b.sar = take(at, order.P);
    at += order.P;
    b.sma = take(at, order.Q);
    for (double& c : b.sma) c = -c;
    return b;
}

double css_objective(const Expanded& e, std::span<const double> w) {
    const std::size_t n = w.size();
    const std::size_t pp = e.phi.size();
    const std::size_t qq = e.theta.size();
    if (n <= pp) return kInf;
    std::vector<double> resid(n, 0.0);
    double ssq = 0.0;
    for (std::size_t t = pp; t < n; ++t) {
        double et = w[t];
        for (std::size_t i = 0; i < pp; ++i) et -= e.phi[i] * w[t - 1 - i];
        for (std::size_t j = 0; j < qq && j < t; ++j) et -= e.theta[j] * resid[t - 1 - j];
        resid[t] = et;
        ssq += et * et;
    }
    const double ms = ssq / static_cast<double>(n - pp);
    return ms > 0.0 ? 0.5 * std::log(ms) : kInf;
}

std::vector<double> concat_blocks(const CoefBlocks& b) {
    std::vector<double> out;
    out.reserve(b.ar.size() + b.ma.size() + b.sar.size() + b.sma.size());
    out.insert(out.end(), b.ar.begin(), b.ar.end());
    out.insert(out.end(), b.ma.begin(), b.ma.end());
    out.insert(out.end(), b.sar.begin(), b.sar.end());
    out.insert(out.end(), b.sma.begin(), b.sma.end());
    return out;
}

void check_period(const TimeSeries& ts, const SarimaOrder& order) {
    if ((order.P > 0 || order.D > 0 || order.Q > 0) && order.period != ts.period()) {
        throw std::invalid_argument("seasonal order has period " + std::to_string(order.period) +
                                    " but the series period is " + std::to_string(ts.period()));
    }
}

/// Differenced series plus the trailing pre-differencing values forecasting
/// will need.
struct Prepared {
    std::vector<double> w;
    std::vector<double> pivots;
};

Prepared prepare_series(const TimeSeries& ts, const SarimaOrder& order) {
    check_period(ts, order);
    Prepared prep;
    if (order.d == 0 && order.D == 0) {
        prep.w = ts.values();
        return prep;
    }
    DifferenceResult diffed = difference(ts, order.d, order.D);
    prep.w = diffed.series.values();
    prep.pivots = diffed.record.pivots;
    return prep;
}

/// Build the complete fit record for known coefficients (shared by fit,
/// filter_with and the zero-coefficient path).
SarimaFit make_fit(const TimeSeries& ts, const SarimaOrder& order, const CoefBlocks& blocks,
                   std::optional<double> sigma2) {
    Prepared prep = prepare_series(ts, order);
    const std::size_t n = prep.w.size();
    if (n < 2) throw std::invalid_argument("series too short after differencing");

    const Expanded e = expand_model(order, blocks);
    const StateSpace ss = build_state_space(e);
    FilterRun fr = run_filter(ss, prep.w);

    SarimaFit fit;
    fit.order = order;
    fit.ar = blocks.ar;
    fit.ma = blocks.ma;
    fit.sar = blocks.sar;
    fit.sma = blocks.sma;
    fit.sigma2 = sigma2 ? *sigma2 : fr.sum_sq / static_cast<double>(n);
    if (!(fit.sigma2 > 0.0)) throw std::runtime_error("innovation variance collapsed to zero");
    fit.loglik = loglik_at(fr, n, fit.sigma2);
    fit.aic = -2.0 * fit.loglik + 2.0 * (order.coefficient_count() + 1);
    fit.residuals.resize(n);
    fit.fitted.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        fit.residuals[t] = fr.v[t] / std::sqrt(fr.f[t]);
        fit.fitted[t] = prep.w[t] - fr.v[t];
    }
    fit.pivot_history = prep.pivots;
    fit.final_state = std::move(fr.state);
    fit.final_state_cov = std::move(fr.state_cov);
    return fit;
}

} // namespace

std::vector<double> SarimaFit::coefficients() const {
    CoefBlocks b{ar, ma, sar, sma};
    return concat_blocks(b);
}

double loglik(const TimeSeries& ts, const SarimaOrder& order, std::span<const double> params,
              double sigma2) {
    order.validate();
    if (!(sigma2 > 0.0)) throw std::domain_error("sigma2 must be positive");
    const CoefBlocks blocks = split_params(order, params);
    validate_coefficients(blocks);
    Prepared prep = prepare_series(ts, order);
    if (prep.w.empty()) throw std::invalid_argument("no observations left after differencing");
    const Expanded e = expand_model(order, blocks);
    const FilterRun fr = run_filter(build_state_space(e), prep.w);
    return loglik_at(fr, prep.w.size(), sigma2);
}

SarimaFit fit(const TimeSeries& ts, const SarimaOrder& order, const FitOptions& opts) {
    order.validate();
    Prepared prep = prepare_series(ts, order);
    const std::size_t n = prep.w.size();
    const int k = order.coefficient_count();
    if (n <= static_cast<std::size_t>(k) + 1) {
        throw std::invalid_argument("series too short after differencing: " + std::to_string(n) +
                                    " observations for " + std::to_string(k) + " coefficients");
    }

    if (k == 0) {
        SarimaFit out = make_fit(ts, order, CoefBlocks{}, std::nullopt);
        out.stderr_available = true;
        out.converged = true;
        return out;
    }

    const auto neg_concentrated = [&](const Eigen::VectorXd& raw) -> double {
        try {
            const Expanded e = expand_model(order, blocks_from_raw(order, raw));
            const FilterRun fr = run_filter(build_state_space(e), prep.w);
            if (!(fr.sum_sq > 0.0)) return kInf;
            const double ll = concentrated_loglik(fr, n);
            return std::isfinite(ll) ? -ll : kInf;
        } catch (const std::exception&) {
            return kInf;
        }
    };

    // Conditional-sum-of-squares starting values, then the exact likelihood.
    const auto css = [&](const Eigen::VectorXd& raw) -> double {
        const double val = css_objective(expand_model(order, blocks_from_raw(order, raw)), prep.w);
        return std::isfinite(val) ? val : kInf;
    };
    optim::Options css_opts;
    css_opts.max_iterations = 200;
    css_opts.rel_tolerance = 1e-6;
    const optim::Result css_res = optim::minimize(css, Eigen::VectorXd::Zero(k), css_opts);

    optim::Options mle_opts;
    mle_opts.max_iterations = opts.max_iterations;
    mle_opts.rel_tolerance = opts.rel_tolerance;
    mle_opts.step_tolerance = opts.step_tolerance;
    const Eigen::VectorXd start =
        std::isfinite(css_res.value) ? css_res.x : Eigen::VectorXd::Zero(k);
    const optim::Result res = optim::minimize(neg_concentrated, start, mle_opts);

    const CoefBlocks blocks = blocks_from_raw(order, res.x);
    SarimaFit out = make_fit(ts, order, blocks, std::nullopt);
    out.converged = res.converged;
    out.iterations = css_res.iterations + res.iterations;
    if (!res.converged) {
        throw fit_error("optimizer did not converge within " + std::to_string(opts.max_iterations) +
                            " iterations for " + order.to_string(),
                        std::move(out));
    }

    // Covariance from the curvature of the concentrated likelihood in natural
    // coefficient space.
    const auto neg_natural = [&](const Eigen::VectorXd& coef) -> double {
        try {
            const CoefBlocks b =
                split_params(order, std::span<const double>(coef.data(), static_cast<std::size_t>(coef.size())));
            if (!ar_stable(b.ar) || !ar_stable(b.sar) || !ma_invertible(b.ma) ||
                !ma_invertible(b.sma)) {
                return kInf;
            }
            const FilterRun fr = run_filter(build_state_space(expand_model(order, b)), prep.w);
            if (!(fr.sum_sq > 0.0)) return kInf;
            const double ll = concentrated_loglik(fr, n);
            return std::isfinite(ll) ? -ll : kInf;
        } catch (const std::exception&) {
            return kInf;
        }
    };
    const std::vector<double> coef = out.coefficients();
    const Eigen::Map<const Eigen::VectorXd> coef_vec(coef.data(), static_cast<Eigen::Index>(coef.size()));
    const Eigen::MatrixXd hessian = optim::numerical_hessian(neg_natural, coef_vec, 1e-4);
    if (hessian.allFinite()) {
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
        if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) {
            Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
            if (cov.allFinite() && (cov.diagonal().array() > 0.0).all()) {
                out.cov = std::move(cov);
                out.std_errors.resize(static_cast<std::size_t>(k));
                for (int i = 0; i < k; ++i) {
                    out.std_errors[static_cast<std::size_t>(i)] = std::sqrt(out.cov(i, i));
                }
                out.stderr_available = true;
            }
        }
    }
    return out;
}

SarimaFit filter_with(const TimeSeries& ts, const SarimaOrder& order,
                      std::span<const double> params, std::optional<double> sigma2) {
    order.validate();
    if (sigma2 && !(*sigma2 > 0.0)) throw std::domain_error("sigma2 must be positive");
    const CoefBlocks blocks = split_params(order, params);
    validate_coefficients(blocks);
    SarimaFit out = make_fit(ts, order, blocks, sigma2);
    out.converged = true;
    return out;
}

std::vector<CoefficientTest> coefficient_tests(const SarimaFit& fit) {
    if (!fit.stderr_available) {
        throw std::runtime_error("standard errors unavailable for this fit");
    }
    const std::vector<std::string> names = coefficient_names(fit.order);
    const std::vector<double> coef = fit.coefficients();
    std::vector<CoefficientTest> tests(coef.size());
    for (std::size_t i = 0; i < coef.size(); ++i) {
        CoefficientTest& t = tests[i];
        t.name = names[i];
        t.estimate = coef[i];
        t.std_error = fit.std_errors[i];
        t.z = t.estimate == 0.0 ? 0.0 : t.estimate / t.std_error;
        t.p_value = 2.0 * (1.0 - normal_cdf(std::abs(t.z)));
    }
    return tests;
}

namespace {

/// Deterministic standard-normal stream: mt19937_64 plus the polar
/// Box-Muller transform, so output is identical across standard libraries
/// (std::normal_distribution is implementation-defined).
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

TimeSeries simulate(const SarimaOrder& order, std::span<const double> params, double sigma2,
                    std::size_t n, std::uint64_t seed, std::optional<int> burn_in) {
    order.validate();
    if (n == 0) throw std::invalid_argument("simulation length must be positive");
    if (!(sigma2 > 0.0)) throw std::domain_error("sigma2 must be positive");
    const CoefBlocks blocks = split_params(order, params);
    validate_coefficients(blocks);
    const int burn = burn_in ? *burn_in : 10 * (order.period + order.p + order.q);
    if (burn < 0) throw std::invalid_argument("burn_in must be non-negative");

    const Expanded e = expand_model(order, blocks);
    const std::size_t pp = e.phi.size();
    const std::size_t qq = e.theta.size();
    const std::size_t total = static_cast<std::size_t>(burn) + n;

    NormalSampler draw(seed);
    const double sd = std::sqrt(sigma2);
    std::vector<double> eps(total);
    for (double& x : eps) x = sd * draw();

    std::vector<double> w(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        double x = eps[t];
        for (std::size_t i = 0; i < pp && i < t; ++i) x += e.phi[i] * w[t - 1 - i];
        for (std::size_t j = 0; j < qq && j < t; ++j) x += e.theta[j] * eps[t - 1 - j];
        w[t] = x;
    }

    std::vector<double> y(w.end() - static_cast<std::ptrdiff_t>(n), w.end());
    for (int rep = 0; rep < order.d; ++rep) {
        for (std::size_t t = 1; t < n; ++t) y[t] += y[t - 1];
    }
    const auto s = static_cast<std::size_t>(order.period);
    for (int rep = 0; rep < order.D; ++rep) {
        for (std::size_t t = s; t < n; ++t) y[t] += y[t - s];
    }
    return TimeSeries(std::move(y), YearMonth{2000, 1}, order.period);
}

ForecastResult forecast(const SarimaFit& fit, int h, double conf) {
    if (h <= 0) throw std::invalid_argument("forecast horizon must be positive");
    if (!(conf > 0.0 && conf < 1.0)) throw std::invalid_argument("confidence level must lie in (0,1)");
    if (!fit.converged) throw std::invalid_argument("cannot forecast from a non-converged fit");

    const SarimaOrder& order = fit.order;
    const CoefBlocks blocks{fit.ar, fit.ma, fit.sar, fit.sma};
    const StateSpace ss = build_state_space(expand_model(order, blocks));
    const Eigen::Index r = ss.r;

    const std::vector<double> dcoef = differencing_coefficients(order.d, order.D, order.period);
    const auto m = static_cast<Eigen::Index>(dcoef.size());
    if (fit.pivot_history.size() != dcoef.size()) {
        throw std::invalid_argument("fit is missing the differencing history needed to forecast");
    }

    // Augmented transition over [ARMA state; y_t, ..., y_{t-m+1}]: the new
    // observation row applies the integration recursion
    //   y_t = w_t - sum_i dcoef_i y_{t-i}.
    const Eigen::Index dim = r + m;
    Eigen::MatrixXd t_aug = Eigen::MatrixXd::Zero(dim, dim);
    t_aug.topLeftCorner(r, r) = ss.t_mat;
    if (m > 0) {
        t_aug.row(r).head(r) = ss.t_mat.row(0);
        for (Eigen::Index i = 0; i < m; ++i) t_aug(r, r + i) = -dcoef[static_cast<std::size_t>(i)];
        for (Eigen::Index i = 1; i < m; ++i) t_aug(r + i, r + i - 1) = 1.0;
    }
    Eigen::VectorXd r_aug = Eigen::VectorXd::Zero(dim);
    r_aug.head(r) = ss.r_vec;
    if (m > 0) r_aug(r) = 1.0;

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
    c.topLeftCorner(r, r) = fit.final_state_cov;

    Eigen::VectorXd alpha = fit.final_state;
    std::vector<double> hist = fit.pivot_history; // oldest first
    const double z = normal_quantile(0.5 * (1.0 + conf));
    const Eigen::Index obs_slot = m > 0 ? r : 0;

    ForecastResult out;
    out.horizon = h;
    out.conf = conf;
    out.mean.resize(static_cast<std::size_t>(h));
    out.se.resize(static_cast<std::size_t>(h));
    out.lower.resize(static_cast<std::size_t>(h));
    out.upper.resize(static_cast<std::size_t>(h));

    Eigen::VectorXd alpha_next(r);
    Eigen::MatrixXd tc(dim, dim);
    for (int step = 0; step < h; ++step) {
        alpha_next.noalias() = ss.t_mat * alpha;
        alpha = alpha_next;
        double mean = alpha(0);
        if (m > 0) {
            for (Eigen::Index i = 1; i <= m; ++i) {
                mean -= dcoef[static_cast<std::size_t>(i - 1)] * hist[hist.size() - static_cast<std::size_t>(i)];
            }
            hist.push_back(mean);
            hist.erase(hist.begin());
        }
        tc.noalias() = t_aug * c;
        c.noalias() = tc * t_aug.transpose();
        c.noalias() += r_aug * r_aug.transpose();

        const double var = fit.sigma2 * c(obs_slot, obs_slot);
        if (!(var > 0.0) || !std::isfinite(var)) {
            throw std::runtime_error("forecast variance lost positive definiteness");
        }
        const auto i = static_cast<std::size_t>(step);
        out.mean[i] = mean;
        out.se[i] = std::sqrt(var);
        out.lower[i] = mean - z * out.se[i];
        out.upper[i] = mean + z * out.se[i];
    }
    return out;
}

OneStepPredictions one_step_predictions(const SarimaFit& fit, const TimeSeries& series,
                                        std::size_t first) {
    const SarimaOrder& order = fit.order;
    Prepared prep = prepare_series(series, order);
    const std::size_t m = series.size() - prep.w.size();
    if (first < m) {
        throw std::invalid_argument("first prediction index falls inside the differencing span");
    }
    if (first >= series.size()) throw std::out_of_range("first prediction index past end of series");

    const CoefBlocks blocks{fit.ar, fit.ma, fit.sar, fit.sma};
    const FilterRun fr = run_filter(build_state_space(expand_model(order, blocks)), prep.w);

    OneStepPredictions out;
    const auto& x = series.values();
    for (std::size_t i = first; i < series.size(); ++i) {
        const std::size_t k = i - m;
        out.mean.push_back(x[i] - fr.v[k]);
        out.se.push_back(std::sqrt(fit.sigma2 * fr.f[k]));
    }
    return out;
}

} // namespace boxjenkins
