#pragma once

namespace boxjenkins {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile. Throws std::domain_error unless 0 < p < 1.
double normal_quantile(double p);

/// P(X > x) for X ~ chi-squared(df). Throws std::domain_error for df <= 0 or x < 0.
double chi_squared_upper_tail(double x, double df);

} // namespace boxjenkins
