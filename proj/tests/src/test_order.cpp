#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "boxjenkins/order.hpp"

using namespace boxjenkins;

namespace {

SarimaOrder make_order(int p, int d, int q, int P, int D, int Q, int period) {
    SarimaOrder o;
    o.p = p;
    o.d = d;
    o.q = q;
    o.P = P;
    o.D = D;
    o.Q = Q;
    o.period = period;
    return o;
}

} // namespace

TEST_SUITE_BEGIN("order");

TEST_CASE("coefficient_count ignores differencing orders") {
    CHECK(make_order(0, 1, 1, 1, 0, 0, 12).coefficient_count() == 2);
    CHECK(make_order(2, 2, 1, 0, 1, 2, 12).coefficient_count() == 5);
    CHECK(SarimaOrder{}.coefficient_count() == 0);
}

TEST_CASE("validate enforces sign and seasonal-period rules") {
    CHECK_NOTHROW(make_order(0, 1, 1, 1, 0, 0, 12).validate());
    CHECK_NOTHROW(make_order(1, 0, 0, 0, 0, 0, 1).validate());
    CHECK_THROWS_AS(make_order(-1, 0, 0, 0, 0, 0, 12).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_order(0, 0, 0, 0, -1, 0, 12).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_order(0, 0, 0, 0, 0, 0, 0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_order(0, 0, 0, 1, 0, 0, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_order(0, 0, 0, 0, 1, 0, 1).validate(), std::invalid_argument);
}

TEST_CASE("to_string prints the conventional label") {
    CHECK(make_order(0, 1, 1, 1, 0, 0, 12).to_string() == "(0,1,1)(1,0,0)[12]");
    CHECK(make_order(2, 0, 2, 0, 1, 1, 4).to_string() == "(2,0,2)(0,1,1)[4]");
    CHECK(SarimaOrder{}.to_string() == "(0,0,0)(0,0,0)[1]");
}

TEST_CASE("orders compare field-wise") {
    CHECK(make_order(0, 1, 1, 1, 0, 0, 12) == make_order(0, 1, 1, 1, 0, 0, 12));
    CHECK(make_order(0, 1, 1, 1, 0, 0, 12) != make_order(0, 1, 1, 0, 0, 1, 12));
    CHECK(make_order(1, 0, 0, 0, 0, 0, 4) != make_order(1, 0, 0, 0, 0, 0, 12));
}

TEST_CASE("coefficient_names follow parameter-vector order") {
    CHECK(coefficient_names(make_order(0, 1, 1, 1, 0, 0, 12)) ==
          std::vector<std::string>{"ma1", "sar1"});
    CHECK(coefficient_names(make_order(2, 0, 1, 1, 0, 2, 12)) ==
          std::vector<std::string>{"ar1", "ar2", "ma1", "sar1", "sma1", "sma2"});
    CHECK(coefficient_names(SarimaOrder{}).empty());
}

TEST_SUITE_END();
