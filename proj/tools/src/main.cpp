// boxjenkins: seasonal ARIMA modeling from CSV to report files.
//
// Subcommands mirror the stages of the Box-Jenkins workflow: identify
// (stationarity analysis), fit (grid search + diagnostics), evaluate
// (one-step holdout), forecast (original-scale intervals from a saved model),
// simulate (seeded sample paths), and pipeline (all stages in order).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boxjenkins/correlogram.hpp"
#include "boxjenkins/errors.hpp"
#include "boxjenkins/pipeline.hpp"
#include "boxjenkins/sarima.hpp"
#include "boxjenkins/serialize.hpp"
#include "boxjenkins/stattests.hpp"
#include "boxjenkins/time_series.hpp"
#include "boxjenkins/transform.hpp"

namespace bj = boxjenkins;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
    std::string input;
    std::string date_column = "date";
    std::string value_column = "value";
    int period = 12;
    std::string lambda_mode = "auto"; // auto | none | <real>
    int d = 1;
    int seasonal_d = 0;
    std::string grid; // empty = stock grid
    int holdout = 0;
    int horizon = 12;
    double conf = 0.95;
    double alpha = 0.05;
    int lags = 20;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out = ".";

    // simulate-only
    std::string sim_order = "0,0,0,0,0,0";
    std::string sim_params;
    double sim_sigma2 = 1.0;
    int sim_n = 120;
    int sim_burn_in = -1; // negative = model default
};

bj::TimeSeries read_input(const RunConfig& cfg) {
    if (cfg.input.empty()) throw std::invalid_argument("--input is required");
    std::ifstream in(cfg.input);
    if (!in) throw std::runtime_error("cannot open input file: " + cfg.input);
    bj::CsvConfig csv;
    csv.date_column = cfg.date_column;
    csv.value_column = cfg.value_column;
    csv.period = cfg.period;
    return bj::from_csv(in, csv);
}

bj::SplitSeries split_input(const RunConfig& cfg, const bj::TimeSeries& ts) {
    if (cfg.holdout < 0) throw std::invalid_argument("--holdout must be >= 0");
    if (static_cast<std::size_t>(cfg.holdout) >= ts.size()) {
        throw std::invalid_argument("holdout of " + std::to_string(cfg.holdout) +
                                    " leaves no training data");
    }
    return bj::split(ts, ts.size() - static_cast<std::size_t>(cfg.holdout));
}

/// "auto" estimates lambda on the series, "none" disables the transform,
/// anything else must parse as a real exponent.
std::optional<double> resolve_lambda(const RunConfig& cfg, const bj::TimeSeries& train) {
    if (cfg.lambda_mode == "none") return std::nullopt;
    if (cfg.lambda_mode == "auto") return bj::estimate_lambda(train);
    char* end = nullptr;
    const double value = std::strtod(cfg.lambda_mode.c_str(), &end);
    if (end == cfg.lambda_mode.c_str() || *end != '\0') {
        throw std::invalid_argument("--lambda must be 'auto', 'none' or a number, got '" +
                                    cfg.lambda_mode + "'");
    }
    return value;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const fs::path& path, const bj::ordered_json& j) {
    write_file(path, j.dump(2) + "\n");
}

fs::path out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    fs::create_directories(dir);
    return dir;
}

std::size_t correlogram_lags(const RunConfig& cfg, std::size_t n) {
    const std::size_t want =
        std::max<std::size_t>(2 * static_cast<std::size_t>(cfg.period), static_cast<std::size_t>(cfg.lags));
    return std::min(n - 1, want);
}

std::vector<bj::SarimaOrder> build_grid(const RunConfig& cfg) {
    bj::GridConfig grid;
    if (cfg.grid.empty()) {
        grid = bj::default_grid();
        grid.d = cfg.d;
        grid.seasonal_d = cfg.seasonal_d;
        grid.period = cfg.period;
    } else {
        grid = bj::parse_grid(cfg.grid, cfg.d, cfg.seasonal_d, cfg.period);
    }
    return bj::candidate_grid(grid);
}

/// The frozen-coefficient fit used by the evaluate and forecast stages:
/// model.json supplies order/params/sigma2, the series supplies the filter
/// state.
bj::SarimaFit frozen_fit(const bj::ModelSpec& spec, const bj::TimeSeries& modeled) {
    return bj::filter_with(modeled, spec.order, spec.params, spec.sigma2);
}

bj::ModelSpec load_model(const RunConfig& cfg) {
    const fs::path path = fs::path(cfg.out) / "model.json";
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("missing " + path.string() + " (run the fit stage first)");
    }
    bj::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("unreadable " + path.string() + ": " + e.what());
    }
    return bj::model_from_json(j);
}

void cmd_identify(const RunConfig& cfg) {
    const bj::TimeSeries series = read_input(cfg);
    const bj::TimeSeries train = split_input(cfg, series).train;
    const std::optional<double> lambda = resolve_lambda(cfg, train);
    const bj::TimeSeries transformed = lambda ? bj::boxcox(train, *lambda) : train;
    const bj::TimeSeries stationary =
        (cfg.d > 0 || cfg.seasonal_d > 0)
            ? bj::difference(transformed, cfg.d, cfg.seasonal_d).series
            : transformed;

    const bj::TestReport adf = bj::adf_test(stationary);
    const bj::Correlogram corr =
        bj::correlogram(stationary, correlogram_lags(cfg, stationary.size()));

    bj::ordered_json j;
    j["n"] = train.size();
    j["n_after_differencing"] = stationary.size();
    j["lambda"] = lambda ? bj::ordered_json(bj::round_sig(*lambda)) : bj::ordered_json(nullptr);
    j["d"] = cfg.d;
    j["seasonal_d"] = cfg.seasonal_d;
    j["period"] = cfg.period;
    j["adf"] = bj::to_json(adf);

    const fs::path dir = out_dir(cfg);
    write_json(dir / "stationarity.json", j);
    std::ostringstream acf;
    bj::write_acf_csv(acf, corr);
    write_file(dir / "acf.csv", acf.str());
    std::ostringstream pacf;
    bj::write_pacf_csv(pacf, corr);
    write_file(dir / "pacf.csv", pacf.str());
}

void cmd_fit(const RunConfig& cfg) {
    const bj::TimeSeries series = read_input(cfg);
    const bj::TimeSeries train = split_input(cfg, series).train;
    const std::optional<double> lambda = resolve_lambda(cfg, train);
    const bj::TimeSeries transformed = lambda ? bj::boxcox(train, *lambda) : train;

    bj::TransformRecord record;
    record.lambda = lambda;
    record.period = cfg.period;

    const bj::SelectionReport report =
        bj::select(transformed, build_grid(cfg), cfg.alpha, cfg.jobs);
    const bj::SarimaFit& chosen = report.chosen_fit();
    const bj::DiagnosticsReport diag = bj::diagnose(chosen, cfg.lags, cfg.alpha);

    const fs::path dir = out_dir(cfg);
    write_json(dir / "selection.json", bj::to_json(report));
    write_json(dir / "model.json", bj::model_to_json(chosen, record));
    write_json(dir / "diagnostics.json", bj::to_json(diag));
    std::ostringstream racf;
    bj::write_correlogram_csv(racf, diag.residual_correlogram);
    write_file(dir / "residual_acf.csv", racf.str());
}

void cmd_evaluate(const RunConfig& cfg) {
    if (cfg.holdout < 1) throw std::invalid_argument("--holdout must be >= 1 for evaluate");
    const bj::TimeSeries series = read_input(cfg);
    const bj::SplitSeries parts = split_input(cfg, series);
    const bj::ModelSpec spec = load_model(cfg);

    const bj::TimeSeries transformed_train =
        spec.record.lambda ? bj::boxcox(parts.train, *spec.record.lambda) : parts.train;
    bj::TimeSeries modeled_train = transformed_train;
    if (spec.record.d > 0 || spec.record.seasonal_d > 0) {
        modeled_train =
            bj::difference(transformed_train, spec.record.d, spec.record.seasonal_d).series;
    }
    const bj::SarimaFit fit = frozen_fit(spec, modeled_train);
    const bj::HoldoutReport report =
        bj::evaluate_holdout(fit, spec.record, parts.train, parts.holdout);
    write_json(out_dir(cfg) / "holdout.json", bj::to_json(report));
}

void cmd_forecast(const RunConfig& cfg) {
    if (cfg.horizon < 1) throw std::invalid_argument("--horizon must be >= 1");
    const bj::TimeSeries series = read_input(cfg);
    const bj::ModelSpec spec = load_model(cfg);

    const bj::TimeSeries transformed =
        spec.record.lambda ? bj::boxcox(series, *spec.record.lambda) : series;

    // Records carrying their own differencing describe an externally
    // differenced fit; refresh their pivots from the end of the current data
    // so inversion continues the full series.
    bj::TransformRecord record = spec.record;
    bj::TimeSeries modeled = transformed;
    if (record.d > 0 || record.seasonal_d > 0) {
        bj::DifferenceResult diffed = bj::difference(transformed, record.d, record.seasonal_d);
        modeled = std::move(diffed.series);
        record.pivots = diffed.record.pivots;
    }
    const bj::SarimaFit fit = frozen_fit(spec, modeled);
    const bj::ForecastPath path = bj::forecast_original_scale(fit, record, cfg.horizon, cfg.conf);

    std::ostringstream csv;
    bj::write_forecast_csv(csv, series.end(), path);
    write_file(out_dir(cfg) / "forecast.csv", csv.str());
    if (path.lower_clamped) {
        std::cerr << "warning: some lower interval endpoints left the inverse transform domain "
                     "and were clamped to 0\n";
    }
}

void cmd_simulate(const RunConfig& cfg) {
    bj::SarimaOrder order;
    order.period = cfg.period;
    {
        int p = 0, d = 0, q = 0, sp = 0, sd = 0, sq = 0;
        char tail = 0;
        if (std::sscanf(cfg.sim_order.c_str(), "%d,%d,%d,%d,%d,%d%c", &p, &d, &q, &sp, &sd, &sq,
                        &tail) != 6) {
            throw std::invalid_argument("--order must be 'p,d,q,P,D,Q', got '" + cfg.sim_order + "'");
        }
        order.p = p;
        order.d = d;
        order.q = q;
        order.P = sp;
        order.D = sd;
        order.Q = sq;
    }
    std::vector<double> params;
    if (!cfg.sim_params.empty()) {
        std::stringstream ss(cfg.sim_params);
        std::string item;
        while (std::getline(ss, item, ',')) {
            char* end = nullptr;
            const double v = std::strtod(item.c_str(), &end);
            if (end == item.c_str() || *end != '\0') {
                throw std::invalid_argument("--params entry '" + item + "' is not a number");
            }
            params.push_back(v);
        }
    }
    if (cfg.sim_n < 1) throw std::invalid_argument("-n must be >= 1");
    const std::optional<int> burn =
        cfg.sim_burn_in >= 0 ? std::optional<int>(cfg.sim_burn_in) : std::nullopt;
    const bj::TimeSeries ts = bj::simulate(order, params, cfg.sim_sigma2,
                                           static_cast<std::size_t>(cfg.sim_n), cfg.seed, burn);
    bj::CsvConfig csv;
    csv.date_column = cfg.date_column;
    csv.value_column = cfg.value_column;
    csv.period = cfg.period;
    std::ostringstream os;
    bj::to_csv(os, ts, csv);
    write_file(out_dir(cfg) / "simulated.csv", os.str());
}

void cmd_pipeline(const RunConfig& cfg) {
    cmd_identify(cfg);
    cmd_fit(cfg);
    if (cfg.holdout > 0) cmd_evaluate(cfg);
    cmd_forecast(cfg);
}

void add_io_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--input", cfg.input, "Input CSV file");
    cmd->add_option("--date-column", cfg.date_column, "Date column name");
    cmd->add_option("--value-column", cfg.value_column, "Value column name");
    cmd->add_option("--period", cfg.period, "Seasonal period")->check(CLI::PositiveNumber);
    cmd->add_option("--out", cfg.out, "Output directory");
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--lambda", cfg.lambda_mode, "Power transform: auto, none or an exponent");
    cmd->add_option("-d", cfg.d, "Ordinary differencing order")->check(CLI::NonNegativeNumber);
    cmd->add_option("-D", cfg.seasonal_d, "Seasonal differencing order")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--holdout", cfg.holdout, "Observations reserved for evaluation")
        ->check(CLI::NonNegativeNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seasonal ARIMA modeling: identification, fitting, diagnostics, forecasting"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Configuration file (key = value)");
    app.allow_config_extras(CLI::config_extras_mode::ignore);

    RunConfig cfg;

    CLI::App* identify = app.add_subcommand("identify", "Stationarity analysis and correlograms");
    add_io_flags(identify, cfg);
    add_model_flags(identify, cfg);
    identify->add_option("--lags", cfg.lags, "Correlogram lag count")->check(CLI::PositiveNumber);

    CLI::App* fit = app.add_subcommand("fit", "Grid search, selection and residual diagnostics");
    add_io_flags(fit, cfg);
    add_model_flags(fit, cfg);
    fit->add_option("--grid", cfg.grid, "Candidate grid 'p,q;...xP,Q;...'");
    fit->add_option("--alpha", cfg.alpha, "Coefficient significance level");
    fit->add_option("--lags", cfg.lags, "Ljung-Box lag count");
    fit->add_option("--jobs", cfg.jobs, "Concurrent candidate fits")->check(CLI::PositiveNumber);

    CLI::App* evaluate = app.add_subcommand("evaluate", "One-step-ahead holdout evaluation");
    add_io_flags(evaluate, cfg);
    add_model_flags(evaluate, cfg);

    CLI::App* forecast = app.add_subcommand("forecast", "Original-scale forecast from model.json");
    add_io_flags(forecast, cfg);
    forecast->add_option("--horizon", cfg.horizon, "Forecast steps")->check(CLI::PositiveNumber);
    forecast->add_option("--conf", cfg.conf, "Interval confidence level");

    CLI::App* simulate = app.add_subcommand("simulate", "Seeded SARIMA sample path");
    add_io_flags(simulate, cfg);
    simulate->add_option("--order", cfg.sim_order, "Model order p,d,q,P,D,Q");
    simulate->add_option("--params", cfg.sim_params, "Coefficients ar..,ma..,sar..,sma..");
    simulate->add_option("--sigma2", cfg.sim_sigma2, "Innovation variance");
    simulate->add_option("-n", cfg.sim_n, "Series length")->check(CLI::PositiveNumber);
    simulate->add_option("--burn-in", cfg.sim_burn_in, "Burn-in steps (default 10*(s+p+q))");
    simulate->add_option("--seed", cfg.seed, "Random seed");

    CLI::App* pipeline = app.add_subcommand("pipeline", "All stages: identify, fit, evaluate, forecast");
    add_io_flags(pipeline, cfg);
    add_model_flags(pipeline, cfg);
    pipeline->add_option("--grid", cfg.grid, "Candidate grid 'p,q;...xP,Q;...'");
    pipeline->add_option("--alpha", cfg.alpha, "Coefficient significance level");
    pipeline->add_option("--lags", cfg.lags, "Diagnostics lag count");
    pipeline->add_option("--horizon", cfg.horizon, "Forecast steps")->check(CLI::PositiveNumber);
    pipeline->add_option("--conf", cfg.conf, "Interval confidence level");
    pipeline->add_option("--jobs", cfg.jobs, "Concurrent candidate fits")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!(cfg.conf > 0.0 && cfg.conf < 1.0)) {
            throw std::invalid_argument("--conf must lie in (0,1)");
        }
        if (identify->parsed()) cmd_identify(cfg);
        if (fit->parsed()) cmd_fit(cfg);
        if (evaluate->parsed()) cmd_evaluate(cfg);
        if (forecast->parsed()) cmd_forecast(cfg);
        if (simulate->parsed()) cmd_simulate(cfg);
        if (pipeline->parsed()) cmd_pipeline(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
