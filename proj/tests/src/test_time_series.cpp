#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "boxjenkins/errors.hpp"
#include "boxjenkins/time_series.hpp"
#include "test_helpers.hpp"

using namespace boxjenkins;

TEST_SUITE_BEGIN("time_series");

TEST_CASE("advance handles year boundaries and negative steps") {
    CHECK(advance({2009, 1}, 0) == YearMonth{2009, 1});
    CHECK(advance({2009, 12}, 1) == YearMonth{2010, 1});
    CHECK(advance({2009, 1}, -1) == YearMonth{2008, 12});
    CHECK(advance({2009, 6}, 30) == YearMonth{2011, 12});
    CHECK(advance({2000, 1}, -25) == YearMonth{1997, 12});
}

TEST_CASE("months_between is the inverse of advance") {
    const YearMonth a{2009, 7};
    for (long k : {-37L, -12L, -1L, 0L, 1L, 5L, 12L, 100L}) {
        CHECK(months_between(a, advance(a, k)) == k);
    }
}

TEST_CASE("year-month formatting and parsing") {
    CHECK(to_string(YearMonth{2009, 3}) == "2009-03");
    CHECK(to_string(YearMonth{987, 12}) == "0987-12");
    CHECK(parse_year_month("2009-03") == YearMonth{2009, 3});
    CHECK_THROWS_AS(parse_year_month("2009-13"), std::invalid_argument);
    CHECK_THROWS_AS(parse_year_month("2009-00"), std::invalid_argument);
    CHECK_THROWS_AS(parse_year_month("200903"), std::invalid_argument);
    CHECK_THROWS_AS(parse_year_month("2009-03-01"), std::invalid_argument);
    CHECK_THROWS_AS(parse_year_month(""), std::invalid_argument);
}

TEST_CASE("TimeSeries validates on construction") {
    CHECK_THROWS_AS(make_series({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(make_series({std::numeric_limits<double>::infinity()}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({1.0}, {2009, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({1.0}, {2009, 13}, 12), std::invalid_argument);
    CHECK_NOTHROW(TimeSeries({}, {2009, 1}, 12)); // empty holdouts exist
}

TEST_CASE("timestamps step monthly from start") {
    const TimeSeries ts = make_series({1, 2, 3}, 12, 2009, 11);
    CHECK(ts.timestamp(0) == YearMonth{2009, 11});
    CHECK(ts.timestamp(2) == YearMonth{2010, 1});
    CHECK(ts.end() == YearMonth{2010, 2});
}

TEST_CASE("with_values keeps calendar but requires equal length") {
    const TimeSeries ts = make_series({1, 2, 3});
    const TimeSeries other = ts.with_values({4, 5, 6});
    CHECK(other.start() == ts.start());
    CHECK(other[0] == 4.0);
    CHECK_THROWS_AS(ts.with_values({1.0}), std::invalid_argument);
}

TEST_CASE("from_csv parses a minimal two-row file") {
    std::istringstream in("date,value\n2009-01,56\n2009-02,61\n");
    const TimeSeries ts = from_csv(in);
    REQUIRE(ts.size() == 2);
    CHECK(ts.start() == YearMonth{2009, 1});
    CHECK(ts[0] == 56.0);
    CHECK(ts[1] == 61.0);
    CHECK(ts.period() == 12);
}

TEST_CASE("from_csv accepts BOM, CRLF, extra columns and blank lines") {
    std::istringstream in("\xEF\xBB\xBFregion,date,value\r\nNCR,2009-01,5\r\n\r\nNCR,2009-02,6\r\n");
    const TimeSeries ts = from_csv(in);
    REQUIRE(ts.size() == 2);
    CHECK(ts[1] == 6.0);
}

TEST_CASE("from_csv honours configured column names") {
    std::istringstream in("month,cases\n2010-05,12.5\n");
    CsvConfig cfg;
    cfg.date_column = "month";
    cfg.value_column = "cases";
    const TimeSeries ts = from_csv(in, cfg);
    CHECK(ts.start() == YearMonth{2010, 5});
    CHECK(ts[0] == 12.5);
}

TEST_CASE("from_csv reports gaps by the missing month") {
    std::istringstream in("date,value\n2009-01,56\n2009-03,70\n");
    CHECK_THROWS_WITH_AS(from_csv(in), doctest::Contains("2009-02"), gap_error);
}

TEST_CASE("from_csv rejects duplicates and disorder") {
    std::istringstream dup("date,value\n2009-01,1\n2009-01,2\n");
    CHECK_THROWS_AS(from_csv(dup), gap_error);
    std::istringstream rev("date,value\n2009-02,1\n2009-01,2\n");
    CHECK_THROWS_AS(from_csv(rev), gap_error);
}

TEST_CASE("from_csv reports parse failures with the row number") {
    std::istringstream in("date,value\n2009-01,abc\n");
    try {
        from_csv(in);
        FAIL("expected csv_error");
    } catch (const csv_error& e) {
        CHECK(e.row() == 1);
        CHECK(std::string(e.what()).find("abc") != std::string::npos);
    }
}

TEST_CASE("from_csv rejects structural problems") {
    std::istringstream empty("");
    CHECK_THROWS_AS(from_csv(empty), csv_error);
    std::istringstream header_only("date,value\n");
    CHECK_THROWS_AS(from_csv(header_only), csv_error);
    std::istringstream missing_col("date,count\n2009-01,1\n");
    CHECK_THROWS_AS(from_csv(missing_col), csv_error);
    std::istringstream ragged("date,value\n2009-01\n");
    CHECK_THROWS_AS(from_csv(ragged), csv_error);
    std::istringstream inf_value("date,value\n2009-01,inf\n");
    CHECK_THROWS_AS(from_csv(inf_value), csv_error);
    std::istringstream trailing("date,value\n2009-01,1.5x\n");
    CHECK_THROWS_AS(from_csv(trailing), csv_error);
}

TEST_CASE("csv round-trip preserves values to full precision") {
    const TimeSeries ts = make_series({1.0 / 3.0, 2.0 / 7.0, 1e-17, 123456789.123456789});
    std::ostringstream out;
    to_csv(out, ts);
    std::istringstream in(out.str());
    const TimeSeries back = from_csv(in);
    REQUIRE(back.size() == ts.size());
    CHECK(back.start() == ts.start());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(back[i] == ts[i]);
}

TEST_CASE("split partitions and concatenation restores the series") {
    std::vector<double> v(132);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i) * 0.5;
    const TimeSeries ts = make_series(v);
    const SplitSeries parts = split(ts, 108);
    CHECK(parts.train.size() == 108);
    CHECK(parts.holdout.size() == 24);
    CHECK(parts.holdout.start() == parts.train.end());
    CHECK(parts.train.period() == parts.holdout.period());

    std::vector<double> joined = parts.train.values();
    joined.insert(joined.end(), parts.holdout.values().begin(), parts.holdout.values().end());
    CHECK(joined == ts.values());
}

TEST_CASE("split boundary cases") {
    const TimeSeries ts = make_series({1, 2, 3});
    CHECK(split(ts, 3).holdout.empty());
    CHECK(split(ts, 3).holdout.start() == ts.end());
    CHECK_THROWS_AS(split(ts, 0), std::out_of_range);
    CHECK_THROWS_AS(split(ts, 4), std::out_of_range);
}

TEST_SUITE_END();
