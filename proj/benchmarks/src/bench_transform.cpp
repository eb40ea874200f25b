#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "boxjenkins/correlogram.hpp"
#include "boxjenkins/sarima.hpp"
#include "boxjenkins/time_series.hpp"
#include "boxjenkins/transform.hpp"

namespace {

using namespace boxjenkins;

TimeSeries positive_series(std::size_t n) {
    SarimaOrder o;
    o.p = 1;
    const std::vector<double> params{0.6};
    const TimeSeries base = simulate(o, params, 0.25, n, 3);
    std::vector<double> v(base.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(base[i] + 4.0);
    return base.with_values(std::move(v));
}

void BM_EstimateLambda(benchmark::State& state) {
    const TimeSeries ts = positive_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_lambda(ts));
    }
}
BENCHMARK(BM_EstimateLambda)->Arg(108)->Arg(1000);

void BM_BoxcoxRoundTrip(benchmark::State& state) {
    const TimeSeries ts = positive_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(inverse_boxcox(boxcox(ts, 0.49), 0.49));
    }
}
BENCHMARK(BM_BoxcoxRoundTrip)->Arg(1000);

void BM_DifferenceRoundTrip(benchmark::State& state) {
    const TimeSeries ts = positive_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        DifferenceResult d = difference(ts, 1, 1);
        benchmark::DoNotOptimize(undifference(d.series.values(), d.record));
    }
}
BENCHMARK(BM_DifferenceRoundTrip)->Arg(1000);

void BM_Correlogram(benchmark::State& state) {
    const TimeSeries ts = positive_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(correlogram(ts, 40));
    }
}
BENCHMARK(BM_Correlogram)->Arg(1000);

} // namespace
