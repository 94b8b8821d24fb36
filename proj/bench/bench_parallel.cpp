// Serial reference against the OpenMP paths: per-value study jobs and
// cold-started voltage sweeps.

#include "pullin/pullin.hpp"
#include "pullin/study.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace plab;

namespace {

StudySpec thickness_study()
{
    StudySpec s;
    s.vary = StudyParameter::thickness;
    s.values = {2e-6, 2.25e-6, 2.5e-6, 2.75e-6, 3e-6, 3.25e-6, 3.5e-6, 3.75e-6};
    s.grid_n = 401;
    s.outputs.profile = true;
    return s;
}

void BM_StudySerial(benchmark::State& state)
{
    const StudySpec s = thickness_study();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_study_serial(s));
    }
}

void BM_StudyParallel(benchmark::State& state)
{
    const StudySpec s = thickness_study();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_study(s, static_cast<int>(state.range(0))));
    }
}

void BM_Sweep(benchmark::State& state)
{
    const BeamParams b;
    const Grid g = build_grid(401, b);
    const std::vector<double> volts = auto_voltage_grid(21.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sweep_voltage_independent(b, volts, g, {}, static_cast<int>(state.range(0))));
    }
}

}  // namespace

BENCHMARK(BM_StudySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StudyParallel)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
