#include "boxjenkins/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "boxjenkins/correlogram.hpp"
#include "boxjenkins/dist.hpp"

namespace boxjenkins {

std::string to_string(TestMethod method) {
    switch (method) {
    case TestMethod::adf: return "adf";
    case TestMethod::ljung_box: return "ljung_box";
    case TestMethod::shapiro_wilk: return "shapiro_wilk";
    }
    throw std::invalid_argument("unknown test method");
}

namespace {

// Piecewise-linear interpolation of (xs, ys) at x, clamped to the end values.
double interp_clamped(std::span<const double> xs, std::span<const double> ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    std::size_t i = 1;
    while (xs[i] < x) ++i;
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

// Dickey-Fuller critical values for the constant + linear trend regression,
// rows are lower-tail probabilities, columns sample sizes (last = asymptotic).
constexpr double kAdfProbs[4] = {0.01, 0.025, 0.05, 0.10};
constexpr double kAdfSizes[6] = {25.0, 50.0, 100.0, 250.0, 500.0, 1e5};
constexpr double kAdfCrit[4][6] = {
    {-4.38, -4.15, -4.04, -3.99, -3.98, -3.96},
    {-3.95, -3.80, -3.73, -3.69, -3.68, -3.66},
    {-3.60, -3.50, -3.45, -3.43, -3.42, -3.41},
    {-3.24, -3.18, -3.15, -3.13, -3.13, -3.12},
};

} // namespace

TestReport adf_test(const TimeSeries& ts, std::optional<int> lags) {
    const auto& x = ts.values();
    const std::size_t n = x.size();
    const int L = lags ? *lags
                       : static_cast<int>(std::trunc(std::pow(static_cast<double>(n) - 1.0, 1.0 / 3.0)));
    if (L < 0) throw std::invalid_argument("lag order must be non-negative");
    if (n < static_cast<std::size_t>(L) + 10) {
        throw std::invalid_argument("series too short for ADF with " + std::to_string(L) + " lags");
    }

    // First differences; regression rows are indexed by j = L..n-2 so that
    // every lagged difference exists.
    std::vector<double> dx(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1] - x[i];

    const int rows = static_cast<int>(dx.size()) - L;
    const int cols = 3 + L; // intercept, level, trend, lagged differences
    if (rows <= cols) throw std::invalid_argument("series too short for ADF with " + std::to_string(L) + " lags");

    Eigen::VectorXd y(rows);
    Eigen::MatrixXd X(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const int j = L + r; // index into dx
        y(r) = dx[j];
        X(r, 0) = 1.0;
        X(r, 1) = x[j];
        X(r, 2) = static_cast<double>(j + 1);
        for (int i = 1; i <= L; ++i) X(r, 2 + i) = dx[j - i];
    }
    // Center the non-intercept columns: leaves their coefficients and t-ratios
    // unchanged but keeps the least-squares problem well conditioned.
    for (int c = 1; c < cols; ++c) X.col(c).array() -= X.col(c).mean();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < cols) throw std::runtime_error("ADF regressor matrix is rank deficient");

    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - X * beta;
    const double s2 = resid.squaredNorm() / static_cast<double>(rows - cols);

    // (X'X)^-1 = P R^-1 R^-T P' from the pivoted factorization X P = Q R.
    const Eigen::MatrixXd rinv = qr.matrixR()
                                     .topLeftCorner(cols, cols)
                                     .triangularView<Eigen::Upper>()
                                     .solve(Eigen::MatrixXd::Identity(cols, cols));
    Eigen::MatrixXd xtx_inv = rinv * rinv.transpose();
    xtx_inv = qr.colsPermutation() * xtx_inv * qr.colsPermutation().transpose();

    const double se = std::sqrt(s2 * xtx_inv(1, 1));
    const double stat = beta(1) / se;

    // Interpolate across sample sizes, then across the tail probabilities.
    const double n_eff = static_cast<double>(dx.size());
    double cv[4];
    for (int r = 0; r < 4; ++r) cv[r] = interp_clamped(kAdfSizes, kAdfCrit[r], n_eff);

    TestReport report;
    report.method = TestMethod::adf;
    report.statistic = stat;
    report.lags_used = L;
    report.null_hypothesis = "series has a unit root";
    if (stat <= cv[0]) {
        report.p_value = kAdfProbs[0];
        report.p_is_bound = stat < cv[0];
    } else if (stat >= cv[3]) {
        report.p_value = kAdfProbs[3];
        report.p_is_bound = stat > cv[3];
    } else {
        report.p_value = interp_clamped(cv, kAdfProbs, stat);
    }
    return report;
}

TestReport ljung_box(std::span<const double> residuals, int lags, int fitdf) {
    if (lags <= 0) throw std::invalid_argument("Ljung-Box needs lags > 0");
    if (fitdf < 0) throw std::invalid_argument("fitdf must be non-negative");
    if (lags <= fitdf) {
        throw std::invalid_argument("Ljung-Box needs lags > fitdf (would give df <= 0)");
    }
    const std::size_t n = residuals.size();
    if (n <= static_cast<std::size_t>(lags)) {
        throw std::invalid_argument("need more observations than lags");
    }

    const std::vector<double> acf = sample_acf(residuals, static_cast<std::size_t>(lags));
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        q += acf[static_cast<std::size_t>(k)] * acf[static_cast<std::size_t>(k)] /
             static_cast<double>(n - static_cast<std::size_t>(k));
    }
    q *= static_cast<double>(n) * (static_cast<double>(n) + 2.0);

    TestReport report;
    report.method = TestMethod::ljung_box;
    report.statistic = q;
    report.df = static_cast<double>(lags - fitdf);
    report.lags_used = lags;
    report.p_value = chi_squared_upper_tail(q, static_cast<double>(lags - fitdf));
    report.null_hypothesis = "residuals are uncorrelated up to the tested lags";
    return report;
}

namespace {

double polyval(std::span<const double> c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Royston (1995) polynomial coefficients, ascending order.
constexpr double kC1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
constexpr double kC2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[4] = {0.544, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[3] = {-0.4803, -0.082676, 0.0030302};

} // namespace

TestReport shapiro_wilk(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3 || n > 5000) {
        throw std::invalid_argument("Shapiro-Wilk requires 3 <= n <= 5000, got " + std::to_string(n));
    }

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    if (x.front() == x.back()) throw std::domain_error("Shapiro-Wilk sample has zero variance");

    // Blom normal scores and their normalization into weights.
    std::vector<double> m(n);
    double ssq_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (static_cast<double>(n) + 0.25));
        ssq_m += m[i] * m[i];
    }

    std::vector<double> a(n);
    if (n == 3) {
        const double r = std::sqrt(0.5);
        a = {-r, 0.0, r};
    } else {
        const double u = 1.0 / std::sqrt(static_cast<double>(n));
        const double norm = std::sqrt(ssq_m);
        const double an = m[n - 1] / norm + polyval(kC1, u);
        if (n <= 5) {
            const double phi = (ssq_m - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * an * an);
            for (std::size_t i = 1; i + 1 < n; ++i) a[i] = m[i] / std::sqrt(phi);
            a[n - 1] = an;
            a[0] = -an;
        } else {
            const double an1 = m[n - 2] / norm + polyval(kC2, u);
            const double phi = (ssq_m - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
                               (1.0 - 2.0 * an * an - 2.0 * an1 * an1);
            for (std::size_t i = 2; i + 2 < n; ++i) a[i] = m[i] / std::sqrt(phi);
            a[n - 1] = an;
            a[n - 2] = an1;
            a[0] = -an;
            a[1] = -an1;
        }
    }

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ssq = 0.0;
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ssq += (x[i] - mean) * (x[i] - mean);
        num += a[i] * x[i];
    }
    double w = num * num / ssq;
    if (w > 1.0) w = 1.0;

    double p;
    if (n == 3) {
        p = 6.0 / M_PI * (std::asin(std::sqrt(w)) - std::asin(std::sqrt(0.75)));
        p = std::clamp(p, 0.0, 1.0);
    } else if (n <= 11) {
        const double nn = static_cast<double>(n);
        const double gamma = -2.273 + 0.459 * nn;
        const double y = -std::log(gamma - std::log1p(-w));
        const double mu = polyval(kC3, nn);
        const double sigma = std::exp(polyval(kC4, nn));
        p = 1.0 - normal_cdf((y - mu) / sigma);
    } else {
        const double y = std::log1p(-w);
        const double ln_n = std::log(static_cast<double>(n));
        const double mu = polyval(kC5, ln_n);
        const double sigma = std::exp(polyval(kC6, ln_n));
        p = 1.0 - normal_cdf((y - mu) / sigma);
    }
    if (w >= 1.0) p = 1.0;

    TestReport report;
    report.method = TestMethod::shapiro_wilk;
    report.statistic = w;
    report.p_value = p;
    report.null_hypothesis = "sample is drawn from a normal distribution";
    return report;
}

} // namespace boxjenkins
