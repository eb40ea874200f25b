#include "boxjenkins/order.hpp"

#include <sstream>
#include <stdexcept>

namespace boxjenkins {

void SarimaOrder::validate() const {
    if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0) {
        throw std::invalid_argument("model orders must be non-negative");
    }
    if (period < 1) throw std::invalid_argument("period must be >= 1");
    if ((P > 0 || D > 0 || Q > 0) && period <= 1) {
        throw std::invalid_argument("seasonal terms require period > 1");
    }
}

std::string SarimaOrder::to_string() const {
    std::ostringstream os;
    os << '(' << p << ',' << d << ',' << q << ")(" << P << ',' << D << ',' << Q << ")[" << period
       << ']';
    return os.str();
}

std::vector<std::string> coefficient_names(const SarimaOrder& order) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(order.coefficient_count()));
    for (int i = 1; i <= order.p; ++i) names.push_back("ar" + std::to_string(i));
    for (int i = 1; i <= order.q; ++i) names.push_back("ma" + std::to_string(i));
    for (int i = 1; i <= order.P; ++i) names.push_back("sar" + std::to_string(i));
    for (int i = 1; i <= order.Q; ++i) names.push_back("sma" + std::to_string(i));
    return names;
}

} // namespace boxjenkins
