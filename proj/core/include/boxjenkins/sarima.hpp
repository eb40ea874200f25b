#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "boxjenkins/order.hpp"
#include "boxjenkins/time_series.hpp"

namespace boxjenkins {

struct FitOptions {
    int max_iterations = 500;
    double rel_tolerance = 1e-8;  ///< relative log-likelihood change at convergence
    double step_tolerance = 1e-6; ///< parameter step norm at convergence
};

/// A fitted (or frozen) SARIMA model. Coefficients follow the sign convention
///   w_t = sum phi_i w_{t-i} + e_t + sum theta_j e_{t-j}
/// on the differenced series w. residuals are one-step innovations scaled to
/// the data (their sample variance approximates sigma2); fitted are one-step
/// mean predictions of the differenced series. pivot_history/final_state carry
/// what forecasting needs and are not meant for direct use.
struct SarimaFit {
    SarimaOrder order;
    std::vector<double> ar;
    std::vector<double> ma;
    std::vector<double> sar;
    std::vector<double> sma;
    double sigma2 = 0.0;
    double loglik = 0.0;
    double aic = 0.0;
    std::vector<double> std_errors; ///< valid only when stderr_available
    Eigen::MatrixXd cov;            ///< coefficient covariance, same caveat
    bool stderr_available = false;
    std::vector<double> residuals;
    std::vector<double> fitted;
    bool converged = false;
    int iterations = 0;

    std::vector<double> pivot_history; ///< last d + s*D pre-differencing values
    Eigen::VectorXd final_state;
    Eigen::MatrixXd final_state_cov; ///< in units of sigma2

    /// Concatenated [ar, ma, sar, sma], matching coefficient_names(order).
    std::vector<double> coefficients() const;
};

/// Thrown when optimization exhausts its iteration budget; carries the best
/// parameters found so far.
class fit_error : public std::runtime_error {
public:
    fit_error(const std::string& message, SarimaFit partial)
        : std::runtime_error(message), partial_(std::move(partial)) {}
    const SarimaFit& partial_fit() const { return partial_; }

private:
    SarimaFit partial_;
};

struct CoefficientTest {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    double p_value = 0.0;
};

struct ForecastResult {
    int horizon = 0;
    double conf = 0.0;
    std::vector<double> mean;
    std::vector<double> se;
    std::vector<double> lower;
    std::vector<double> upper;
};

/// Exact Gaussian log-likelihood of ts under the model. Differencing per
/// (order.d, order.D) is applied to ts first; the likelihood is that of the
/// stationary ARMA on the differences (no drift), evaluated by the Kalman
/// filter on the expanded ARMA(p + s*P, q + s*Q).
/// params = concatenated [ar, ma, sar, sma]; throws std::domain_error for
/// non-stationary or non-invertible params.
double loglik(const TimeSeries& ts, const SarimaOrder& order, std::span<const double> params,
              double sigma2);

/// Maximum-likelihood fit. Starting values come from conditional sum of
/// squares; optimization runs in an unconstrained parametrization that keeps
/// every iterate stationary and invertible; sigma2 is concentrated out.
/// Throws fit_error (with best-so-far) if the optimizer fails to converge.
SarimaFit fit(const TimeSeries& ts, const SarimaOrder& order, const FitOptions& opts = {});

/// Kalman pass with frozen coefficients: no estimation beyond sigma2, which is
/// concentrated out unless supplied. Produces a SarimaFit usable for
/// forecasting (stderr unavailable).
SarimaFit filter_with(const TimeSeries& ts, const SarimaOrder& order,
                      std::span<const double> params, std::optional<double> sigma2 = {});

/// z = estimate / stderr and two-sided normal p-value per coefficient.
/// Throws std::runtime_error if standard errors are unavailable.
std::vector<CoefficientTest> coefficient_tests(const SarimaFit& fit);

/// Seeded Gaussian SARIMA sample path: ARMA recursion over burn_in + n steps
/// (default burn_in = 10*(s+p+q)), then d- and D-fold integration of the last
/// n values. Identical seed gives identical output across platforms.
TimeSeries simulate(const SarimaOrder& order, std::span<const double> params, double sigma2,
                    std::size_t n, std::uint64_t seed, std::optional<int> burn_in = {});

/// h-step prediction on the modeled scale via the integrated state-space
/// recursion; intervals are mean -/+ z_{(1+conf)/2} * se.
ForecastResult forecast(const SarimaFit& fit, int h, double conf = 0.95);

struct OneStepPredictions {
    std::vector<double> mean; ///< predicted series values, modeled scale
    std::vector<double> se;
};

/// One-step-ahead predictions of series[first..] from a model fitted
/// elsewhere: the filter runs over the whole series with frozen parameters,
/// so each prediction conditions on all earlier observations.
OneStepPredictions one_step_predictions(const SarimaFit& fit, const TimeSeries& series,
                                        std::size_t first);

} // namespace boxjenkins
