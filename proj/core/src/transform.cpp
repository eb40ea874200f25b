#include "boxjenkins/transform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace boxjenkins {

double boxcox_value(double x, double lambda) {
    if (x <= 0.0) throw std::domain_error("Box-Cox requires positive values");
    if (lambda == 0.0) return std::log(x);
    return (std::pow(x, lambda) - 1.0) / lambda;
}

double inverse_boxcox_value(double y, double lambda) {
    if (lambda == 0.0) return std::exp(y);
    const double base = lambda * y + 1.0;
    if (base <= 0.0) throw std::domain_error("inverse Box-Cox out of domain (lambda*y + 1 <= 0)");
    return std::pow(base, 1.0 / lambda);
}

TimeSeries boxcox(const TimeSeries& ts, double lambda) {
    std::vector<double> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] <= 0.0) {
            throw std::domain_error("Box-Cox requires positive values; value at index " +
                                    std::to_string(i) + " is " + std::to_string(ts[i]));
        }
        out[i] = boxcox_value(ts[i], lambda);
    }
    return ts.with_values(std::move(out));
}

TimeSeries inverse_boxcox(const TimeSeries& ts, double lambda) {
    std::vector<double> out(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out[i] = inverse_boxcox_value(ts[i], lambda);
    }
    return ts.with_values(std::move(out));
}

double boxcox_loglik(const TimeSeries& ts, double lambda) {
    const std::size_t n = ts.size();
    if (n < 2) throw std::invalid_argument("need at least two observations");
    double log_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (ts[i] <= 0.0) throw std::domain_error("Box-Cox requires positive values");
        log_sum += std::log(ts[i]);
    }
    double mean = 0.0;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = boxcox_value(ts[i], lambda);
        mean += y[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : y) ss += (v - mean) * (v - mean);
    const double variance = ss / static_cast<double>(n);
    if (variance <= 0.0) return -1e300; // constant transformed series
    return -0.5 * static_cast<double>(n) * std::log(variance) + (lambda - 1.0) * log_sum;
}

double estimate_lambda(const TimeSeries& ts, double lower, double upper) {
    if (!(lower < upper)) throw std::invalid_argument("lambda bounds must satisfy lower < upper");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lower;
    double b = upper;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = boxcox_loglik(ts, c);
    double fd = boxcox_loglik(ts, d);
    while (b - a > 1e-5) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = boxcox_loglik(ts, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = boxcox_loglik(ts, d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> differencing_coefficients(int d, int seasonal_d, int period) {
    // Expand (1-B)^d (1-B^s)^D by repeated polynomial multiplication.
    std::vector<double> poly{1.0};
    auto multiply = [&poly](int lag) {
        std::vector<double> next(poly.size() + static_cast<std::size_t>(lag), 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + static_cast<std::size_t>(lag)] -= poly[i];
        }
        poly = std::move(next);
    };
    for (int i = 0; i < d; ++i) multiply(1);
    for (int i = 0; i < seasonal_d; ++i) multiply(period);
    return {poly.begin() + 1, poly.end()};
}

DifferenceResult difference(const TimeSeries& ts, int d, int seasonal_d) {
    if (d < 0 || seasonal_d < 0) throw std::invalid_argument("differencing orders must be >= 0");
    const int m = d + seasonal_d * ts.period();
    if (ts.size() <= static_cast<std::size_t>(m)) {
        throw std::invalid_argument("series of length " + std::to_string(ts.size()) +
                                    " too short for differencing order " + std::to_string(m));
    }
    const std::vector<double> coef = differencing_coefficients(d, seasonal_d, ts.period());
    const std::vector<double>& y = ts.values();
    std::vector<double> w(y.size() - static_cast<std::size_t>(m));
    for (std::size_t t = static_cast<std::size_t>(m); t < y.size(); ++t) {
        double v = y[t];
        for (std::size_t i = 0; i < coef.size(); ++i) v += coef[i] * y[t - 1 - i];
        w[t - static_cast<std::size_t>(m)] = v;
    }
    TransformRecord record;
    record.d = d;
    record.seasonal_d = seasonal_d;
    record.period = ts.period();
    record.pivots.assign(y.end() - m, y.end());
    return DifferenceResult{
        TimeSeries(std::move(w), ts.timestamp(static_cast<std::size_t>(m)), ts.period()),
        std::move(record)};
}

std::vector<double> undifference(const std::vector<double>& diffed, const TransformRecord& record) {
    const int m = record.pivot_count();
    if (m == 0) return diffed;
    if (static_cast<int>(record.pivots.size()) != m) {
        throw std::logic_error("transform record is missing its differencing pivots");
    }
    const std::vector<double> coef =
        differencing_coefficients(record.d, record.seasonal_d, record.period);
    // history holds the last m reconstructed values, most recent last.
    std::vector<double> history = record.pivots;
    std::vector<double> out(diffed.size());
    for (std::size_t k = 0; k < diffed.size(); ++k) {
        double v = diffed[k];
        for (std::size_t i = 0; i < coef.size(); ++i) v -= coef[i] * history[history.size() - 1 - i];
        out[k] = v;
        history.erase(history.begin());
        history.push_back(v);
    }
    return out;
}

} // namespace boxjenkins
