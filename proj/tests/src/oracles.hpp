// Brute-force reference implementations, deliberately written with different
// algorithms than the library (dense matrices, naive loops) so agreement is
// meaningful.
#pragma once

#include <cstddef>
#include <vector>

#include "boxjenkins/order.hpp"

namespace oracle {

/// Recursion weights of the product polynomial: with moving_average == false
/// multiplies (1 - sum a_i z^i)(1 - sum A_j z^(j*s)) and returns c where the
/// product is 1 - sum c_i z^i; with moving_average == true multiplies
/// (1 + ...)(1 + ...) and returns c where the product is 1 + sum c_i z^i.
std::vector<double> expand_recursion_weights(const std::vector<double>& regular,
                                             const std::vector<double>& seasonal, int period,
                                             bool moving_average);

/// gamma_0..gamma_max_lag of w_t = sum phi_i w_{t-i} + e_t + sum theta_j e_{t-j}
/// with Var(e) = sigma2, via psi weights truncated adaptively.
std::vector<double> arma_autocovariance(const std::vector<double>& phi,
                                        const std::vector<double>& theta, double sigma2,
                                        std::size_t max_lag);

/// Dense zero-mean multivariate normal log-density of w under the Toeplitz
/// covariance with first row gamma.
double mvn_loglik(const std::vector<double>& w, const std::vector<double>& gamma);

/// Exact SARIMA Gaussian log-likelihood the slow way: naive differencing,
/// polynomial expansion, psi-weight Toeplitz covariance, dense density.
/// params concatenates [ar, ma, sar, sma].
double sarima_loglik(const std::vector<double>& y, const boxjenkins::SarimaOrder& order,
                     const std::vector<double>& params, double sigma2);

/// O(n * max_lag) textbook autocorrelation (mean removed, divide-by-n).
std::vector<double> brute_force_acf(const std::vector<double>& x, std::size_t max_lag);

/// pacf[k] from one dense Yule-Walker solve per lag; pacf[0] = 1.
std::vector<double> yule_walker_pacf(const std::vector<double>& acf);

/// d ordinary then D seasonal difference passes, each a naive loop.
std::vector<double> naive_difference(const std::vector<double>& x, int d, int seasonal_d,
                                     int period);

} // namespace oracle
