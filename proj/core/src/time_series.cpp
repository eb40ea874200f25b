#include "boxjenkins/time_series.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "boxjenkins/errors.hpp"

namespace boxjenkins {

namespace {

long month_index(YearMonth ym) {
    return static_cast<long>(ym.year) * 12 + (ym.month - 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

YearMonth advance(YearMonth from, long steps) {
    long idx = month_index(from) + steps;
    long year = idx >= 0 ? idx / 12 : -((-idx + 11) / 12);
    return YearMonth{static_cast<int>(year), static_cast<int>(idx - year * 12) + 1};
}

long months_between(YearMonth from, YearMonth to) {
    return month_index(to) - month_index(from);
}

std::string to_string(YearMonth ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

YearMonth parse_year_month(const std::string& text) {
    int year = 0;
    int month = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d%c", &year, &month, &tail) != 2 || month < 1 || month > 12) {
        throw std::invalid_argument("not a YYYY-MM date: '" + text + "'");
    }
    return YearMonth{year, month};
}

TimeSeries::TimeSeries(std::vector<double> values, YearMonth start, int period)
    : values_(std::move(values)), start_(start), period_(period) {
    if (period_ < 1) throw std::invalid_argument("period must be >= 1");
    if (start_.month < 1 || start_.month > 12) throw std::invalid_argument("start month must be in 1..12");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("non-finite value at index " + std::to_string(i));
        }
    }
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    if (values.size() != values_.size()) {
        throw std::invalid_argument("with_values: length mismatch");
    }
    return TimeSeries(std::move(values), start_, period_);
}

TimeSeries from_csv(std::istream& in, const CsvConfig& config) {
    std::string line;
    if (!std::getline(in, line)) throw csv_error("empty input", 0);
    // Tolerate a UTF-8 BOM on the first line.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    const std::vector<std::string> header = split_fields(line);
    std::size_t date_col = header.size();
    std::size_t value_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = strip(header[i]);
        if (name == config.date_column) date_col = i;
        if (name == config.value_column) value_col = i;
    }
    if (date_col == header.size()) throw csv_error("missing column '" + config.date_column + "'", 0);
    if (value_col == header.size()) throw csv_error("missing column '" + config.value_column + "'", 0);

    std::vector<double> values;
    YearMonth start{};
    YearMonth expected{};
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        ++row;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw csv_error("expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(fields.size()),
                            row);
        }
        YearMonth date{};
        try {
            date = parse_year_month(strip(fields[date_col]));
        } catch (const std::invalid_argument& e) {
            throw csv_error(e.what(), row);
        }
        if (values.empty()) {
            start = date;
        } else if (date != expected) {
            const long delta = months_between(expected, date);
            if (delta > 0) {
                throw gap_error("missing month " + to_string(expected));
            }
            throw gap_error("duplicate or out-of-order date " + to_string(date) + ", expected " +
                            to_string(expected));
        }
        expected = advance(date, 1);

        const std::string text = strip(fields[value_col]);
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(value)) {
            throw csv_error("not a number: '" + text + "'", row);
        }
        values.push_back(value);
    }
    if (values.empty()) throw csv_error("no data rows", 0);
    return TimeSeries(std::move(values), start, config.period);
}

void to_csv(std::ostream& out, const TimeSeries& ts, const CsvConfig& config) {
    out << config.date_column << ',' << config.value_column << '\n';
    char buf[40];
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", ts[i]);
        out << to_string(ts.timestamp(i)) << ',' << buf << '\n';
    }
}

SplitSeries split(const TimeSeries& ts, std::size_t n_train) {
    if (n_train < 1 || n_train > ts.size()) {
        throw std::out_of_range("n_train must be in [1, " + std::to_string(ts.size()) + "], got " +
                                std::to_string(n_train));
    }
    std::vector<double> head(ts.values().begin(), ts.values().begin() + static_cast<long>(n_train));
    std::vector<double> tail(ts.values().begin() + static_cast<long>(n_train), ts.values().end());
    return SplitSeries{TimeSeries(std::move(head), ts.start(), ts.period()),
                       TimeSeries(std::move(tail), ts.timestamp(n_train), ts.period())};
}

} // namespace boxjenkins
