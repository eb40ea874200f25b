#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "boxjenkins/correlogram.hpp"
#include "boxjenkins/sarima.hpp"
#include "boxjenkins/stattests.hpp"
#include "boxjenkins/time_series.hpp"
#include "boxjenkins/transform.hpp"

namespace boxjenkins {

struct SelectionRow {
    SarimaOrder order;
    bool fitted = false; ///< fit completed (implies converged)
    bool converged = false;
    double aic = std::numeric_limits<double>::quiet_NaN();
    double loglik = std::numeric_limits<double>::quiet_NaN();
    bool all_significant = false;
    std::vector<CoefficientTest> coefficients; ///< empty when stderr unavailable
    std::string error;                         ///< why the candidate was excluded
    std::optional<SarimaFit> fit;
};

/// Grid-search outcome: rows ranked by AIC ascending with failures last.
/// chosen is the lowest-AIC converged candidate whose coefficients are all
/// significant at alpha; when no candidate passes that filter the lowest-AIC
/// converged one is chosen and significance_relaxed is set.
struct SelectionReport {
    std::vector<SelectionRow> rows;
    std::size_t chosen = 0;
    double alpha = 0.05;
    bool significance_relaxed = false;

    const SarimaFit& chosen_fit() const;
};

/// Fits every candidate on train (jobs > 1 fits them concurrently; the report
/// is identical either way). Throws std::runtime_error when no candidate fits.
SelectionReport select(const TimeSeries& train, const std::vector<SarimaOrder>& candidates,
                       double alpha = 0.05, int jobs = 1);

struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
};

struct DiagnosticsReport {
    double alpha = 0.05;
    Correlogram residual_correlogram; ///< lags cover at least two seasonal periods
    TestReport ljung_box;
    TestReport normality;
    std::vector<ScatterPoint> residual_vs_fitted;
    std::vector<ScatterPoint> residual_vs_time;
};

/// Residual adequacy checks: correlogram, ljung_box with fitdf = coefficient
/// count, Shapiro-Wilk normality, and the two standard scatter point sets.
DiagnosticsReport diagnose(const SarimaFit& fit, int lags = 20, double alpha = 0.05);

struct HoldoutStep {
    YearMonth when;
    double actual = 0.0;
    double forecast = 0.0;
    double error = 0.0; ///< actual - forecast, original scale
};

struct HoldoutReport {
    std::vector<HoldoutStep> steps;
    double mae = 0.0;
    double rmse = 0.0;
    double mape = 0.0; ///< percent, over steps with nonzero actuals
    std::optional<Correlogram> error_correlogram; ///< absent when errors are degenerate
    std::optional<TestReport> normality;          ///< absent when too few/degenerate errors
};

/// One-step-ahead holdout evaluation with parameters frozen at the train fit:
/// the filter advances through the transformed holdout, each prediction is
/// back-transformed, and errors are actual - forecast on the original scale.
HoldoutReport evaluate_holdout(const SarimaFit& fit, const TransformRecord& record,
                               const TimeSeries& train, const TimeSeries& holdout);

struct ForecastPath {
    double conf = 0.95;
    std::vector<double> point;
    std::vector<double> lower;
    std::vector<double> upper;
    bool lower_clamped = false; ///< some lower endpoint left the inverse Box-Cox domain
};

/// Modeled-scale forecast mapped to the original scale: record-level
/// undifferencing of mean and both endpoint paths, then inverse Box-Cox of
/// each (monotone, so coverage is preserved and intervals turn asymmetric).
/// Lower endpoints outside the inverse transform's domain clamp to 0.
ForecastPath forecast_original_scale(const SarimaFit& fit, const TransformRecord& record, int h,
                                     double conf = 0.95);

} // namespace boxjenkins
