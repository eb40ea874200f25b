#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace boxjenkins {

/// Calendar position at monthly resolution.
struct YearMonth {
    int year = 0;
    int month = 1; // 1..12

    friend bool operator==(const YearMonth&, const YearMonth&) = default;
};

YearMonth advance(YearMonth from, long steps);
long months_between(YearMonth from, YearMonth to);
std::string to_string(YearMonth ym);              // "YYYY-MM"
YearMonth parse_year_month(const std::string& text);

/// Ordered, gap-free monthly observations with a fixed seasonal period.
/// Immutable after construction; safe to share across threads.
class TimeSeries {
public:
    TimeSeries() = default;

    /// Throws std::invalid_argument on non-finite values or period < 1.
    TimeSeries(std::vector<double> values, YearMonth start, int period);

    const std::vector<double>& values() const { return values_; }
    YearMonth start() const { return start_; }
    int period() const { return period_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    YearMonth timestamp(std::size_t i) const { return advance(start_, static_cast<long>(i)); }
    /// First timestamp past the series end.
    YearMonth end() const { return advance(start_, static_cast<long>(values_.size())); }

    /// Same calendar/period, different values of equal length.
    TimeSeries with_values(std::vector<double> values) const;

private:
    std::vector<double> values_;
    YearMonth start_{};
    int period_ = 1;
};

struct SplitSeries {
    TimeSeries train;
    TimeSeries holdout; // empty when n_train == series length
};

struct CsvConfig {
    std::string date_column = "date";
    std::string value_column = "value";
    int period = 12;
};

/// Parses `date,value` rows (dates formatted YYYY-MM, one row per month).
/// Throws csv_error on malformed content, gap_error on missing or
/// out-of-order months.
TimeSeries from_csv(std::istream& in, const CsvConfig& config = {});

/// Inverse of from_csv; values are written with full round-trip precision.
void to_csv(std::ostream& out, const TimeSeries& ts, const CsvConfig& config = {});

/// First n_train observations vs. the rest. Throws std::out_of_range unless
/// 1 <= n_train <= ts.size().
SplitSeries split(const TimeSeries& ts, std::size_t n_train);

} // namespace boxjenkins
