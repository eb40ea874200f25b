#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "boxjenkins/order.hpp"
#include "boxjenkins/time_series.hpp"

namespace boxjenkins {

/// Sample ACF/PACF with the +-1.96/sqrt(n) white-noise band.
/// acf is indexed by lag (acf[0] == 1); pacf[0] is 1 by convention and
/// meaningful from lag 1 on.
struct Correlogram {
    std::vector<double> acf;
    std::vector<double> pacf;
    double band = 0.0;
    std::size_t n = 0;

    std::size_t max_lag() const { return acf.empty() ? 0 : acf.size() - 1; }
};

/// Sample autocorrelations r_0..r_max_lag with the biased (divide-by-n)
/// autocovariance, so the sequence is positive semi-definite.
/// Throws std::invalid_argument when max_lag >= n, std::domain_error on a
/// constant series.
std::vector<double> sample_acf(std::span<const double> x, std::size_t max_lag);

/// Partial autocorrelations via Durbin-Levinson on a sample ACF
/// (index 0 is the trivial 1). Throws std::runtime_error if the recursion's
/// prediction variance becomes non-positive.
std::vector<double> pacf_from_acf(std::span<const double> acf);

/// Both ACF and PACF plus the confidence band.
Correlogram correlogram(const TimeSeries& ts, std::size_t max_lag);

/// Candidate-order grid: cross-product of nonseasonal (p,q) pairs with
/// seasonal (P,Q) pairs at fixed d, D, period.
struct GridConfig {
    std::vector<std::pair<int, int>> nonseasonal; // (p, q)
    std::vector<std::pair<int, int>> seasonal;    // (P, Q)
    int d = 0;
    int seasonal_d = 0;
    int period = 1;
};

/// Deduplicated, deterministic candidate list. Throws std::invalid_argument
/// on an empty configuration.
std::vector<SarimaOrder> candidate_grid(const GridConfig& config);

/// The stock ten-candidate grid used for monthly data:
/// (p,q) in {(0,1),(1,1),(1,2),(2,1),(2,2)} x (P,Q) in {(1,0),(0,1)},
/// d=1, D=0, s=12.
GridConfig default_grid();

/// Parses "p,q[;p,q...]x" "P,Q[;P,Q...]" grid syntax, e.g.
/// "0,1;1,1x1,0;0,1". Throws std::invalid_argument on malformed text.
GridConfig parse_grid(const std::string& text, int d, int seasonal_d, int period);

} // namespace boxjenkins
