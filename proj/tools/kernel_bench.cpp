// Compares the OpenMP kernels against their serial reference implementations.
// Run manually: build/kernel_bench [--benchmark_filter=...]

#include "ehy/dgp.hpp"
#include "ehy/indices.hpp"
#include "ehy/reference.hpp"
#include "ehy/spline.hpp"

#include <benchmark/benchmark.h>

namespace {

ehy::FunctionalSample make_sample(int n, int m) {
    ehy::DgpSpec spec;
    spec.id = 1;
    spec.n = n;
    spec.m = m;
    spec.alpha = 0.1;
    spec.seed = 42;
    return ehy::generate(spec);
}

void bm_area_indices_parallel(benchmark::State& state) {
    const auto sample = make_sample(static_cast<int>(state.range(0)), 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(ehy::area_indices(sample.values, sample.grid));
}

void bm_area_indices_serial(benchmark::State& state) {
    const auto sample = make_sample(static_cast<int>(state.range(0)), 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(ehy::reference::area_indices(sample.values, sample.grid));
}

void bm_modified_indices_parallel(benchmark::State& state) {
    const auto sample = make_sample(static_cast<int>(state.range(0)), 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(ehy::modified_indices(sample.values, sample.grid));
}

void bm_modified_indices_serial(benchmark::State& state) {
    const auto sample = make_sample(static_cast<int>(state.range(0)), 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(ehy::reference::modified_indices(sample.values, sample.grid));
}

void bm_smooth_parallel(benchmark::State& state) {
    const auto sample = make_sample(static_cast<int>(state.range(0)), 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(ehy::smooth_sample(sample));
}

void bm_smooth_serial(benchmark::State& state) {
    const auto sample = make_sample(static_cast<int>(state.range(0)), 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(ehy::reference::smooth_sample(sample));
}

}  // namespace

BENCHMARK(bm_area_indices_serial)->Arg(200)->Arg(800);
BENCHMARK(bm_area_indices_parallel)->Arg(200)->Arg(800);
BENCHMARK(bm_modified_indices_serial)->Arg(200)->Arg(800);
BENCHMARK(bm_modified_indices_parallel)->Arg(200)->Arg(800);
BENCHMARK(bm_smooth_serial)->Arg(200)->Arg(2000);
BENCHMARK(bm_smooth_parallel)->Arg(200)->Arg(2000);

BENCHMARK_MAIN();
