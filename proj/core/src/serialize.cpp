#include "boxjenkins/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace boxjenkins {

double round_sig(double v, int digits) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

namespace {

/// Report number: 6 significant digits, non-finite mapped to JSON null.
ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_sig(v);
}

ordered_json full(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json rounded_array(const std::vector<double>& xs) {
    ordered_json arr = ordered_json::array();
    for (double x : xs) arr.push_back(num(x));
    return arr;
}

ordered_json correlogram_json(const Correlogram& c) {
    ordered_json j;
    j["n"] = c.n;
    j["band"] = num(c.band);
    j["acf"] = rounded_array(c.acf);
    j["pacf"] = rounded_array(c.pacf);
    return j;
}

} // namespace

ordered_json to_json(const SarimaOrder& order) {
    ordered_json j;
    j["p"] = order.p;
    j["d"] = order.d;
    j["q"] = order.q;
    j["P"] = order.P;
    j["D"] = order.D;
    j["Q"] = order.Q;
    j["period"] = order.period;
    j["label"] = order.to_string();
    return j;
}

SarimaOrder order_from_json(const ordered_json& j) {
    SarimaOrder order;
    try {
        order.p = j.at("p").get<int>();
        order.d = j.at("d").get<int>();
        order.q = j.at("q").get<int>();
        order.P = j.at("P").get<int>();
        order.D = j.at("D").get<int>();
        order.Q = j.at("Q").get<int>();
        order.period = j.at("period").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad model order in JSON: ") + e.what());
    }
    order.validate();
    return order;
}

ordered_json to_json(const TransformRecord& record) {
    ordered_json j;
    j["lambda"] = record.lambda ? ordered_json(*record.lambda) : ordered_json(nullptr);
    j["d"] = record.d;
    j["seasonal_d"] = record.seasonal_d;
    j["period"] = record.period;
    if (!record.pivots.empty()) j["pivots"] = record.pivots;
    return j;
}

TransformRecord transform_record_from_json(const ordered_json& j) {
    TransformRecord record;
    try {
        if (j.contains("lambda") && !j.at("lambda").is_null()) {
            record.lambda = j.at("lambda").get<double>();
        }
        record.d = j.value("d", 0);
        record.seasonal_d = j.value("seasonal_d", 0);
        record.period = j.value("period", 1);
        if (j.contains("pivots")) record.pivots = j.at("pivots").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad transform record in JSON: ") + e.what());
    }
    return record;
}

ordered_json to_json(const TestReport& report) {
    ordered_json j;
    j["method"] = to_string(report.method);
    j["statistic"] = num(report.statistic);
    j["p_value"] = num(report.p_value);
    j["p_is_bound"] = report.p_is_bound;
    j["df"] = report.df ? ordered_json(num(*report.df)) : ordered_json(nullptr);
    j["lags_used"] = report.lags_used ? ordered_json(*report.lags_used) : ordered_json(nullptr);
    j["null_hypothesis"] = report.null_hypothesis;
    return j;
}

namespace {

ordered_json coefficient_table(const SarimaFit& fit, bool full_precision) {
    ordered_json coefs = ordered_json::object();
    const std::vector<std::string> names = coefficient_names(fit.order);
    const std::vector<double> values = fit.coefficients();
    std::vector<CoefficientTest> tests;
    if (fit.stderr_available) tests = coefficient_tests(fit);
    for (std::size_t i = 0; i < names.size(); ++i) {
        ordered_json entry;
        entry["estimate"] = full_precision ? full(values[i]) : num(values[i]);
        if (fit.stderr_available) {
            entry["stderr"] = full_precision ? full(tests[i].std_error) : num(tests[i].std_error);
            entry["z"] = num(tests[i].z);
            entry["p_value"] = num(tests[i].p_value);
        }
        coefs[names[i]] = std::move(entry);
    }
    return coefs;
}

} // namespace

ordered_json to_json(const SarimaFit& fit) {
    ordered_json j;
    j["order"] = to_json(fit.order);
    j["coefficients"] = coefficient_table(fit, false);
    j["sigma2"] = num(fit.sigma2);
    j["loglik"] = num(fit.loglik);
    j["aic"] = num(fit.aic);
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j;
}

ordered_json to_json(const SelectionReport& report) {
    ordered_json j;
    j["alpha"] = num(report.alpha);
    j["chosen"] = report.chosen;
    j["significance_relaxed"] = report.significance_relaxed;
    ordered_json rows = ordered_json::array();
    for (const SelectionRow& row : report.rows) {
        ordered_json r;
        r["order"] = to_json(row.order);
        r["fitted"] = row.fitted;
        r["converged"] = row.converged;
        r["aic"] = num(row.aic);
        r["loglik"] = num(row.loglik);
        r["all_significant"] = row.all_significant;
        ordered_json coefs = ordered_json::object();
        for (const CoefficientTest& t : row.coefficients) {
            ordered_json entry;
            entry["estimate"] = num(t.estimate);
            entry["stderr"] = num(t.std_error);
            entry["z"] = num(t.z);
            entry["p_value"] = num(t.p_value);
            coefs[t.name] = std::move(entry);
        }
        r["coefficients"] = std::move(coefs);
        r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

ordered_json to_json(const DiagnosticsReport& report) {
    ordered_json j;
    j["alpha"] = num(report.alpha);
    j["ljung_box"] = to_json(report.ljung_box);
    j["shapiro_wilk"] = to_json(report.normality);
    j["correlogram"] = correlogram_json(report.residual_correlogram);
    ordered_json rvf = ordered_json::array();
    for (const ScatterPoint& p : report.residual_vs_fitted) {
        rvf.push_back(ordered_json::array({num(p.x), num(p.y)}));
    }
    j["residual_vs_fitted"] = std::move(rvf);
    ordered_json rvt = ordered_json::array();
    for (const ScatterPoint& p : report.residual_vs_time) {
        rvt.push_back(ordered_json::array({num(p.x), num(p.y)}));
    }
    j["residual_vs_time"] = std::move(rvt);
    return j;
}

ordered_json to_json(const HoldoutReport& report) {
    ordered_json j;
    j["n"] = report.steps.size();
    j["mae"] = num(report.mae);
    j["rmse"] = num(report.rmse);
    j["mape"] = num(report.mape);
    ordered_json steps = ordered_json::array();
    for (const HoldoutStep& s : report.steps) {
        ordered_json e;
        e["month"] = to_string(s.when);
        e["actual"] = num(s.actual);
        e["forecast"] = num(s.forecast);
        e["error"] = num(s.error);
        steps.push_back(std::move(e));
    }
    j["steps"] = std::move(steps);
    j["error_acf"] = report.error_correlogram ? correlogram_json(*report.error_correlogram)
                                              : ordered_json(nullptr);
    j["normality"] = report.normality ? to_json(*report.normality) : ordered_json(nullptr);
    return j;
}

ordered_json model_to_json(const SarimaFit& fit, const TransformRecord& record) {
    ordered_json j;
    j["order"] = to_json(fit.order);
    j["coefficients"] = coefficient_table(fit, true);
    j["sigma2"] = full(fit.sigma2);
    j["loglik"] = full(fit.loglik);
    j["aic"] = full(fit.aic);
    j["converged"] = fit.converged;
    j["transform"] = to_json(record);
    return j;
}

ModelSpec model_from_json(const ordered_json& j) {
    ModelSpec spec;
    try {
        spec.order = order_from_json(j.at("order"));
        const ordered_json& coefs = j.at("coefficients");
        for (const std::string& name : coefficient_names(spec.order)) {
            spec.params.push_back(coefs.at(name).at("estimate").get<double>());
        }
        spec.sigma2 = j.at("sigma2").get<double>();
        spec.record = transform_record_from_json(j.at("transform"));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad model JSON: ") + e.what());
    }
    if (!(spec.sigma2 > 0.0)) throw std::invalid_argument("model JSON has non-positive sigma2");
    return spec;
}

void write_acf_csv(std::ostream& out, const Correlogram& c) {
    out << "lag,acf,band\n";
    for (std::size_t k = 0; k < c.acf.size(); ++k) {
        out << k << ',' << csv_double(c.acf[k]) << ',' << csv_double(c.band) << '\n';
    }
}

void write_pacf_csv(std::ostream& out, const Correlogram& c) {
    out << "lag,pacf,band\n";
    for (std::size_t k = 1; k < c.pacf.size(); ++k) {
        out << k << ',' << csv_double(c.pacf[k]) << ',' << csv_double(c.band) << '\n';
    }
}

void write_correlogram_csv(std::ostream& out, const Correlogram& c) {
    out << "lag,acf,pacf,band\n";
    for (std::size_t k = 0; k < c.acf.size(); ++k) {
        out << k << ',' << csv_double(c.acf[k]) << ',' << csv_double(c.pacf[k]) << ','
            << csv_double(c.band) << '\n';
    }
}

void write_forecast_csv(std::ostream& out, YearMonth first_month, const ForecastPath& path) {
    out << "month,point,lower,upper\n";
    for (std::size_t i = 0; i < path.point.size(); ++i) {
        out << to_string(advance(first_month, static_cast<long>(i))) << ','
            << csv_double(path.point[i]) << ',' << csv_double(path.lower[i]) << ','
            << csv_double(path.upper[i]) << '\n';
    }
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterPoint>& points,
                       const std::string& x_name, const std::string& y_name) {
    out << x_name << ',' << y_name << '\n';
    for (const ScatterPoint& p : points) {
        out << csv_double(p.x) << ',' << csv_double(p.y) << '\n';
    }
}

} // namespace boxjenkins
