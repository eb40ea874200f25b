#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "boxjenkins/dist.hpp"

using namespace boxjenkins;

TEST_SUITE_BEGIN("dist");

TEST_CASE("normal_cdf reference values") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.158655253931457).epsilon(1e-12));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(normal_cdf(-8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-6));
    CHECK(normal_cdf(40.0) == 1.0);
}

TEST_CASE("normal_cdf is symmetric") {
    for (double x : {0.1, 0.7, 1.3, 2.9, 5.5}) {
        CHECK(normal_cdf(x) + normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("normal_quantile inverts the cdf") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    for (double p : {0.001, 0.1, 0.3, 0.77, 0.999}) {
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(-0.5), std::domain_error);
}

TEST_CASE("chi-squared upper tail closed forms") {
    // df = 2 reduces to exp(-x/2)
    for (double x : {0.5, 1.0, 4.5, 10.0}) {
        CHECK(chi_squared_upper_tail(x, 2.0) == doctest::Approx(std::exp(-x / 2.0)).epsilon(1e-12));
    }
    // df = 1 is a folded normal: P(X > x) = 2 * (1 - Phi(sqrt(x)))
    for (double x : {0.5, 2.1, 6.6}) {
        CHECK(chi_squared_upper_tail(x, 1.0) ==
              doctest::Approx(2.0 * (1.0 - normal_cdf(std::sqrt(x)))).epsilon(1e-10));
    }
    CHECK(chi_squared_upper_tail(0.0, 5.0) == 1.0);
    CHECK_THROWS_AS(chi_squared_upper_tail(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(chi_squared_upper_tail(-1.0, 2.0), std::domain_error);
}

TEST_SUITE_END();
