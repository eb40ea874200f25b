#include <benchmark/benchmark.h>

#include "boxjenkins/sarima.hpp"
#include "boxjenkins/stattests.hpp"
#include "boxjenkins/time_series.hpp"

namespace {

using namespace boxjenkins;

TimeSeries ar1(std::size_t n) {
    SarimaOrder o;
    o.p = 1;
    const std::vector<double> params{0.5};
    return simulate(o, params, 1.0, n, 11);
}

void BM_AdfTest(benchmark::State& state) {
    const TimeSeries ts = ar1(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(adf_test(ts));
    }
}
BENCHMARK(BM_AdfTest)->Arg(100)->Arg(500);

void BM_LjungBox(benchmark::State& state) {
    const TimeSeries ts = ar1(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ljung_box(ts.values(), 20));
    }
}
BENCHMARK(BM_LjungBox)->Arg(100)->Arg(1000);

void BM_ShapiroWilk(benchmark::State& state) {
    const TimeSeries ts = ar1(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(shapiro_wilk(ts.values()));
    }
}
BENCHMARK(BM_ShapiroWilk)->Arg(24)->Arg(500)->Arg(5000);

} // namespace
