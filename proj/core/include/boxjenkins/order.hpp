#pragma once

#include <string>
#include <vector>

namespace boxjenkins {

/// Multiplicative seasonal ARIMA specification (p,d,q)(P,D,Q) with period s.
struct SarimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;
    int P = 0;
    int D = 0;
    int Q = 0;
    int period = 1;

    int coefficient_count() const { return p + q + P + Q; }

    /// Throws std::invalid_argument on negative orders or a seasonal part
    /// with period <= 1.
    void validate() const;

    /// "(p,d,q)(P,D,Q)[s]"
    std::string to_string() const;

    friend bool operator==(const SarimaOrder&, const SarimaOrder&) = default;
};

/// Coefficient labels in parameter-vector order: ar1.., ma1.., sar1.., sma1..
std::vector<std::string> coefficient_names(const SarimaOrder& order);

} // namespace boxjenkins
