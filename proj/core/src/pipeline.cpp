#include "boxjenkins/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace boxjenkins {

const SarimaFit& SelectionReport::chosen_fit() const {
    if (chosen >= rows.size() || !rows[chosen].fit) {
        throw std::logic_error("selection report has no usable chosen fit");
    }
    return *rows[chosen].fit;
}

namespace {

SelectionRow fit_candidate(const TimeSeries& train, const SarimaOrder& order, double alpha) {
    SelectionRow row;
    row.order = order;
    try {
        SarimaFit f = fit(train, order);
        row.fitted = true;
        row.converged = f.converged;
        row.aic = f.aic;
        row.loglik = f.loglik;
        if (f.stderr_available) {
            row.coefficients = coefficient_tests(f);
            row.all_significant = std::all_of(row.coefficients.begin(), row.coefficients.end(),
                                              [&](const CoefficientTest& t) { return t.p_value < alpha; });
        } else {
            row.error = "standard errors unavailable";
        }
        row.fit = std::move(f);
    } catch (const fit_error& e) {
        row.error = e.what();
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

SelectionReport select(const TimeSeries& train, const std::vector<SarimaOrder>& candidates,
                       double alpha, int jobs) {
    if (candidates.empty()) throw std::invalid_argument("candidate list is empty");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");

    const std::size_t n = candidates.size();
    std::vector<SelectionRow> rows(n);
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) rows[i] = fit_candidate(train, candidates[i], alpha);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                rows[i] = fit_candidate(train, candidates[i], alpha);
            }
        };
        std::vector<std::thread> pool;
        const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // "Better" under the AIC ranking with its tie-breaks: AIC within 1e-9 is
    // a tie, resolved by fewer coefficients, then candidate order.
    const auto better = [&rows](std::size_t a, std::size_t b) {
        if (rows[a].aic < rows[b].aic - 1e-9) return true;
        if (rows[b].aic < rows[a].aic - 1e-9) return false;
        const int ka = rows[a].order.coefficient_count();
        const int kb = rows[b].order.coefficient_count();
        if (ka != kb) return ka < kb;
        return a < b;
    };

    std::optional<std::size_t> best_significant;
    std::optional<std::size_t> best_any;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].fitted || !rows[i].converged) continue;
        if (!best_any || better(i, *best_any)) best_any = i;
        if (rows[i].all_significant && (!best_significant || better(i, *best_significant))) {
            best_significant = i;
        }
    }
    if (!best_any) {
        std::string detail;
        for (const auto& row : rows) {
            detail += "\n  " + row.order.to_string() + ": " + row.error;
        }
        throw std::runtime_error("no candidate model could be fitted:" + detail);
    }
    const std::size_t chosen_original = best_significant ? *best_significant : *best_any;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&rows](std::size_t a, std::size_t b) {
        if (rows[a].fitted != rows[b].fitted) return rows[a].fitted;
        if (!rows[a].fitted) return false; // failures keep candidate order
        return rows[a].aic < rows[b].aic;
    });

    SelectionReport report;
    report.alpha = alpha;
    report.significance_relaxed = !best_significant.has_value();
    report.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] == chosen_original) report.chosen = i;
        report.rows.push_back(std::move(rows[perm[i]]));
    }
    return report;
}

DiagnosticsReport diagnose(const SarimaFit& fit, int lags, double alpha) {
    if (lags <= 0) throw std::invalid_argument("diagnostics need lags > 0");
    const std::vector<double>& res = fit.residuals;
    if (res.empty()) throw std::invalid_argument("fit has no residuals to diagnose");
    const std::size_t n = res.size();

    DiagnosticsReport rep;
    rep.alpha = alpha;
    const std::size_t want = std::max<std::size_t>(2 * static_cast<std::size_t>(fit.order.period),
                                                   static_cast<std::size_t>(lags));
    const std::size_t max_lag = std::min(n - 1, want);
    rep.residual_correlogram.acf = sample_acf(res, max_lag);
    rep.residual_correlogram.pacf = pacf_from_acf(rep.residual_correlogram.acf);
    rep.residual_correlogram.n = n;
    rep.residual_correlogram.band = 1.96 / std::sqrt(static_cast<double>(n));

    rep.ljung_box = ljung_box(res, lags, fit.order.coefficient_count());
    rep.normality = shapiro_wilk(res);

    rep.residual_vs_fitted.resize(n);
    rep.residual_vs_time.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        rep.residual_vs_fitted[t] = {fit.fitted[t], res[t]};
        rep.residual_vs_time[t] = {static_cast<double>(t), res[t]};
    }
    return rep;
}

HoldoutReport evaluate_holdout(const SarimaFit& fit, const TransformRecord& record,
                               const TimeSeries& train, const TimeSeries& holdout) {
    if (holdout.empty()) throw std::invalid_argument("holdout is empty");
    if (holdout.period() != train.period() || !(holdout.start() == train.end())) {
        throw std::invalid_argument("holdout does not continue the training series");
    }

    std::vector<double> joined = train.values();
    joined.insert(joined.end(), holdout.values().begin(), holdout.values().end());
    const TimeSeries concat(std::move(joined), train.start(), train.period());

    const TimeSeries transformed = record.lambda ? boxcox(concat, *record.lambda) : concat;

    // Records carrying their own differencing describe an externally
    // differenced workflow; peel that layer off before filtering.
    TimeSeries modeled = transformed;
    std::size_t offset = 0;
    if (record.d > 0 || record.seasonal_d > 0) {
        if (record.period != train.period()) {
            throw std::invalid_argument("transform record period does not match the series");
        }
        DifferenceResult diffres = difference(transformed, record.d, record.seasonal_d);
        modeled = std::move(diffres.series);
        offset = static_cast<std::size_t>(record.pivot_count());
    }

    const std::size_t first = train.size() - offset;
    const OneStepPredictions preds = one_step_predictions(fit, modeled, first);

    HoldoutReport rep;
    rep.steps.resize(holdout.size());
    std::vector<double> errors(holdout.size());
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    double pct_sum = 0.0;
    std::size_t pct_n = 0;
    for (std::size_t i = 0; i < holdout.size(); ++i) {
        double predicted_transformed;
        if (offset == 0) {
            predicted_transformed = preds.mean[i];
        } else {
            // prediction error passes through differencing untouched (all
            // earlier values are observed), so shift the actual level by the
            // modeled-scale innovation
            const double innovation = modeled[first + i] - preds.mean[i];
            predicted_transformed = transformed[train.size() + i] - innovation;
        }
        const double predicted = record.lambda
                                     ? inverse_boxcox_value(predicted_transformed, *record.lambda)
                                     : predicted_transformed;
        HoldoutStep& step = rep.steps[i];
        step.when = holdout.timestamp(i);
        step.actual = holdout[i];
        step.forecast = predicted;
        step.error = step.actual - step.forecast;
        errors[i] = step.error;
        abs_sum += std::abs(step.error);
        sq_sum += step.error * step.error;
        if (step.actual != 0.0) {
            pct_sum += std::abs(step.error / step.actual);
            ++pct_n;
        }
    }
    const auto count = static_cast<double>(holdout.size());
    rep.mae = abs_sum / count;
    rep.rmse = std::sqrt(sq_sum / count);
    rep.mape = pct_n > 0 ? 100.0 * pct_sum / static_cast<double>(pct_n)
                         : std::numeric_limits<double>::quiet_NaN();

    if (errors.size() >= 2) {
        try {
            const std::size_t max_lag =
                std::min(errors.size() - 1, 2 * static_cast<std::size_t>(train.period()));
            Correlogram c;
            c.acf = sample_acf(errors, max_lag);
            c.pacf = pacf_from_acf(c.acf);
            c.n = errors.size();
            c.band = 1.96 / std::sqrt(static_cast<double>(errors.size()));
            rep.error_correlogram = std::move(c);
        } catch (const std::exception&) {
            // degenerate errors (e.g. all zero) leave the correlogram unset
        }
    }
    if (errors.size() >= 3) {
        try {
            rep.normality = shapiro_wilk(errors);
        } catch (const std::exception&) {
        }
    }
    return rep;
}

ForecastPath forecast_original_scale(const SarimaFit& fit, const TransformRecord& record, int h,
                                     double conf) {
    const ForecastResult fc = forecast(fit, h, conf);
    std::vector<double> point = fc.mean;
    std::vector<double> lower = fc.lower;
    std::vector<double> upper = fc.upper;
    if (record.d > 0 || record.seasonal_d > 0) {
        point = undifference(point, record);
        lower = undifference(lower, record);
        upper = undifference(upper, record);
    }

    ForecastPath path;
    path.conf = conf;
    path.point.resize(point.size());
    path.lower.resize(point.size());
    path.upper.resize(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (record.lambda) {
            const double lam = *record.lambda;
            path.point[i] = inverse_boxcox_value(point[i], lam);
            path.upper[i] = inverse_boxcox_value(upper[i], lam);
            if (lam != 0.0 && lam * lower[i] + 1.0 <= 0.0) {
                path.lower[i] = 0.0;
                path.lower_clamped = true;
            } else {
                path.lower[i] = inverse_boxcox_value(lower[i], lam);
            }
        } else {
            path.point[i] = point[i];
            path.lower[i] = lower[i];
            path.upper[i] = upper[i];
        }
    }
    return path;
}

} // namespace boxjenkins
