#pragma once

#include <optional>
#include <vector>

#include "boxjenkins/time_series.hpp"

namespace boxjenkins {

/// Everything needed to map model-scale forecasts back to the original scale.
/// `pivots` holds the trailing d + D*period pre-differencing values, so
/// inversion needs no access to the raw series.
struct TransformRecord {
    std::optional<double> lambda;   // power transform exponent; nullopt = none
    int d = 0;                      // ordinary differencing order
    int seasonal_d = 0;             // seasonal differencing order
    int period = 1;
    std::vector<double> pivots;

    int pivot_count() const { return d + seasonal_d * period; }
};

double boxcox_value(double x, double lambda);
double inverse_boxcox_value(double y, double lambda);

/// (x^lambda - 1)/lambda, or ln x at lambda == 0. All values must be > 0;
/// throws std::domain_error naming the offending index otherwise.
TimeSeries boxcox(const TimeSeries& ts, double lambda);

/// Exact inverse: (lambda*y + 1)^(1/lambda), or e^y at lambda == 0.
/// Throws std::domain_error when lambda*y + 1 <= 0.
TimeSeries inverse_boxcox(const TimeSeries& ts, double lambda);

/// Profile log-likelihood of the power transform: Gaussian log-likelihood of
/// the transformed values plus the Jacobian term (lambda - 1) * sum(ln x).
double boxcox_loglik(const TimeSeries& ts, double lambda);

/// Maximizer of boxcox_loglik over [lower, upper], located to within 1e-4
/// by golden-section search.
double estimate_lambda(const TimeSeries& ts, double lower = -2.0, double upper = 2.0);

struct DifferenceResult {
    TimeSeries series;
    TransformRecord record;
};

/// Applies (1-B)^d (1-B^s)^D. Output is shorter by d + D*period; the record
/// captures the trailing pre-differencing values for inversion.
DifferenceResult difference(const TimeSeries& ts, int d, int seasonal_d);

/// Inverts differencing for values that CONTINUE the series beyond the
/// record's pivots (the forecast case). Throws std::logic_error when the
/// record lacks its pivots.
std::vector<double> undifference(const std::vector<double>& diffed, const TransformRecord& record);

/// Coefficients c_1..c_m of the expansion (1-B)^d (1-B^s)^D = 1 + sum c_i B^i,
/// so that an original value satisfies y_t = w_t - sum c_i y_{t-i}.
std::vector<double> differencing_coefficients(int d, int seasonal_d, int period);

} // namespace boxjenkins
