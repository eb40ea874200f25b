#pragma once

#include <optional>
#include <span>
#include <string>

#include "boxjenkins/time_series.hpp"

namespace boxjenkins {

enum class TestMethod { adf, ljung_box, shapiro_wilk };

std::string to_string(TestMethod method);

/// Outcome of a hypothesis test. When p_is_bound is set the p-value lies
/// outside the tabulated range and p_value is the nearest table edge,
/// to be read as "< p_value" (small) or "> p_value" (large).
struct TestReport {
    TestMethod method = TestMethod::adf;
    double statistic = 0.0;
    double p_value = 0.0;
    bool p_is_bound = false;
    std::optional<double> df;
    std::optional<int> lags_used;
    std::string null_hypothesis;
};

/// Augmented Dickey-Fuller unit-root test with constant and linear trend:
///   dx_t = alpha + beta*t + rho*x_{t-1} + sum_i gamma_i dx_{t-i} + e_t
/// statistic = t-ratio of rho; default lags = trunc((n-1)^(1/3)).
/// P-values come from interpolating a Dickey-Fuller critical-value table and
/// are clamped to [0.01, 0.10] with p_is_bound set outside it.
TestReport adf_test(const TimeSeries& ts, std::optional<int> lags = std::nullopt);

/// Ljung-Box portmanteau test, Q = n(n+2) sum_{k<=lags} acf_k^2/(n-k),
/// df = lags - fitdf, upper-tail chi-squared p-value.
TestReport ljung_box(std::span<const double> residuals, int lags, int fitdf = 0);

/// Shapiro-Wilk normality test (Royston's AS R94 approximation, 3 <= n <= 5000).
TestReport shapiro_wilk(std::span<const double> sample);

} // namespace boxjenkins
