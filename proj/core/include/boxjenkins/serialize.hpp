#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boxjenkins/pipeline.hpp"
#include "boxjenkins/sarima.hpp"
#include "boxjenkins/stattests.hpp"
#include "boxjenkins/transform.hpp"

namespace boxjenkins {

using ordered_json = nlohmann::ordered_json;

/// Rounds to the given number of significant digits; reports use 6 so that
/// repeated runs serialize byte-identically.
double round_sig(double v, int digits = 6);

ordered_json to_json(const SarimaOrder& order);
SarimaOrder order_from_json(const ordered_json& j);

ordered_json to_json(const TransformRecord& record);
TransformRecord transform_record_from_json(const ordered_json& j);

ordered_json to_json(const TestReport& report);
ordered_json to_json(const SarimaFit& fit);
ordered_json to_json(const SelectionReport& report);
ordered_json to_json(const DiagnosticsReport& report);
ordered_json to_json(const HoldoutReport& report);

/// Reloadable model artifact: order, named coefficients, sigma2 and the
/// transformation, all at full precision (this file is machine input for the
/// forecast stage, not a display report).
ordered_json model_to_json(const SarimaFit& fit, const TransformRecord& record);

struct ModelSpec {
    SarimaOrder order;
    std::vector<double> params; ///< coefficient_names(order) order
    double sigma2 = 0.0;
    TransformRecord record;
};

/// Throws std::invalid_argument on schema violations.
ModelSpec model_from_json(const ordered_json& j);

// CSV emitters (full precision; these are plot/data files, not reports).
void write_acf_csv(std::ostream& out, const Correlogram& c);
void write_pacf_csv(std::ostream& out, const Correlogram& c);
void write_correlogram_csv(std::ostream& out, const Correlogram& c); ///< lag,acf,pacf,band
void write_forecast_csv(std::ostream& out, YearMonth first_month, const ForecastPath& path);
void write_scatter_csv(std::ostream& out, const std::vector<ScatterPoint>& points,
                       const std::string& x_name, const std::string& y_name);

} // namespace boxjenkins
