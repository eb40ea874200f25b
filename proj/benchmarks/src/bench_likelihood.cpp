#include <benchmark/benchmark.h>

#include "boxjenkins/sarima.hpp"
#include "boxjenkins/time_series.hpp"

namespace {

using namespace boxjenkins;

SarimaOrder airline() {
    SarimaOrder o;
    o.p = 0;
    o.d = 1;
    o.q = 1;
    o.P = 0;
    o.D = 1;
    o.Q = 1;
    o.period = 12;
    return o;
}

const std::vector<double> kAirlineParams{-0.4, -0.6}; // ma1, sma1

TimeSeries airline_series(std::size_t n) { return simulate(airline(), kAirlineParams, 1.0, n, 7); }

void BM_Loglik(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const TimeSeries ts = airline_series(n);
    const SarimaOrder order = airline();
    for (auto _ : state) {
        benchmark::DoNotOptimize(loglik(ts, order, kAirlineParams, 1.0));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Loglik)->Arg(144)->Arg(576)->Arg(2304)->Complexity(benchmark::oN);

void BM_Fit(benchmark::State& state) {
    const TimeSeries ts = airline_series(144);
    const SarimaOrder order = airline();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit(ts, order));
    }
}
BENCHMARK(BM_Fit)->Unit(benchmark::kMillisecond);

void BM_Forecast(benchmark::State& state) {
    const TimeSeries ts = airline_series(144);
    const SarimaFit fitted = fit(ts, airline());
    for (auto _ : state) {
        benchmark::DoNotOptimize(forecast(fitted, 24));
    }
}
BENCHMARK(BM_Forecast);

} // namespace

BENCHMARK_MAIN();
