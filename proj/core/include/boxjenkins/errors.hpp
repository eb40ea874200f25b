#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boxjenkins {

/// Malformed CSV content. `row` is the 1-based data row (header excluded).
class csv_error : public std::runtime_error {
public:
    csv_error(const std::string& message, std::size_t row)
        : std::runtime_error("row " + std::to_string(row) + ": " + message), row_(row) {}

    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

/// Missing, duplicate or out-of-order timestamp in an input stream.
class gap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace boxjenkins
