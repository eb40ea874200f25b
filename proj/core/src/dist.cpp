#include "boxjenkins/dist.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace boxjenkins {

double normal_cdf(double x) {
    // erfc form is accurate in the far tails where 0.5*(1+erf) underflows.
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile needs 0 < p < 1");
    static const boost::math::normal_distribution<double> dist;
    return boost::math::quantile(dist, p);
}

double chi_squared_upper_tail(double x, double df) {
    if (df <= 0.0) throw std::domain_error("chi-squared df must be positive");
    if (x < 0.0) throw std::domain_error("chi-squared statistic must be non-negative");
    boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

} // namespace boxjenkins
