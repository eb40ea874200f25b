#include "boxjenkins/correlogram.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace boxjenkins {

std::vector<double> sample_acf(std::span<const double> x, std::size_t max_lag) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("need at least two observations");
    if (max_lag >= n) {
        throw std::invalid_argument("max_lag " + std::to_string(max_lag) +
                                    " must be < series length " + std::to_string(n));
    }
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    c0 /= static_cast<double>(n);
    if (c0 <= 0.0) throw std::domain_error("zero-variance series has no autocorrelation");

    std::vector<double> r(max_lag + 1);
    r[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) ck += (x[t] - mean) * (x[t + k] - mean);
        r[k] = ck / static_cast<double>(n) / c0;
    }
    return r;
}

std::vector<double> pacf_from_acf(std::span<const double> acf) {
    const std::size_t max_lag = acf.empty() ? 0 : acf.size() - 1;
    std::vector<double> pacf(max_lag + 1, 1.0);
    if (max_lag == 0) return pacf;

    // Durbin-Levinson: phi[j] are the order-k AR coefficients, v the
    // prediction variance ratio.
    std::vector<double> phi(max_lag + 1, 0.0);
    std::vector<double> prev(max_lag + 1, 0.0);
    double v = 1.0;
    pacf[1] = acf[1];
    phi[1] = acf[1];
    v *= 1.0 - acf[1] * acf[1];
    for (std::size_t k = 2; k <= max_lag; ++k) {
        if (v <= 0.0) throw std::runtime_error("Durbin-Levinson breakdown: prediction variance <= 0");
        double num = acf[k];
        for (std::size_t j = 1; j < k; ++j) num -= phi[j] * acf[k - j];
        const double phikk = num / v;
        prev = phi;
        phi[k] = phikk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
        pacf[k] = phikk;
        v *= 1.0 - phikk * phikk;
    }
    return pacf;
}

Correlogram correlogram(const TimeSeries& ts, std::size_t max_lag) {
    Correlogram c;
    c.acf = sample_acf(ts.values(), max_lag);
    c.pacf = pacf_from_acf(c.acf);
    c.n = ts.size();
    c.band = 1.96 / std::sqrt(static_cast<double>(ts.size()));
    return c;
}

std::vector<SarimaOrder> candidate_grid(const GridConfig& config) {
    if (config.nonseasonal.empty() || config.seasonal.empty()) {
        throw std::invalid_argument("candidate grid configuration is empty");
    }
    std::vector<SarimaOrder> out;
    std::set<std::tuple<int, int, int, int>> seen;
    for (const auto& [p, q] : config.nonseasonal) {
        for (const auto& [P, Q] : config.seasonal) {
            if (!seen.insert({p, q, P, Q}).second) continue;
            SarimaOrder order{p, config.d, q, P, config.seasonal_d, Q, config.period};
            order.validate();
            out.push_back(order);
        }
    }
    return out;
}

GridConfig default_grid() {
    GridConfig g;
    g.nonseasonal = {{0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    g.seasonal = {{1, 0}, {0, 1}};
    g.d = 1;
    g.seasonal_d = 0;
    g.period = 12;
    return g;
}

namespace {

std::vector<std::pair<int, int>> parse_pair_list(const std::string& text) {
    std::vector<std::pair<int, int>> pairs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        int a = 0;
        int b = 0;
        char tail = 0;
        if (std::sscanf(item.c_str(), "%d,%d%c", &a, &b, &tail) != 2 || a < 0 || b < 0) {
            throw std::invalid_argument("bad grid entry '" + item + "' (expected p,q)");
        }
        pairs.emplace_back(a, b);
    }
    return pairs;
}

} // namespace

GridConfig parse_grid(const std::string& text, int d, int seasonal_d, int period) {
    const std::size_t sep = text.find('x');
    if (sep == std::string::npos) {
        throw std::invalid_argument("grid string needs 'x' between nonseasonal and seasonal parts");
    }
    GridConfig g;
    g.nonseasonal = parse_pair_list(text.substr(0, sep));
    g.seasonal = parse_pair_list(text.substr(sep + 1));
    g.d = d;
    g.seasonal_d = seasonal_d;
    g.period = period;
    if (g.nonseasonal.empty() || g.seasonal.empty()) {
        throw std::invalid_argument("grid string has an empty side");
    }
    return g;
}

} // namespace boxjenkins
