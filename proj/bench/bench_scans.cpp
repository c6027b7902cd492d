// Compares the OpenMP scan kernels against their serial reference
// implementations on growing sample sets.

#include <benchmark/benchmark.h>

#include "horext/area_velocity.hpp"
#include "horext/fixtures.hpp"
#include "horext/jets.hpp"

using namespace horext;

namespace {

HorizontalJetTriple sized_triple(std::size_t n, int m) {
    const SampleSet K(fixtures::uniform_grid(0.0, 1.0, n));
    return fixtures::sample_jets(fixtures::circle_lift(), K, m);
}

void bm_whitney_scan(benchmark::State& state, ExecutionPolicy policy) {
    const auto gamma = sized_triple(static_cast<std::size_t>(state.range(0)), 2);
    const auto lin = ModulusOfContinuity::linear(10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(validate_cmw(gamma.F, lin, policy).best_constant);
}

void bm_av_scan(benchmark::State& state, ExecutionPolicy policy) {
    const auto gamma = sized_triple(static_cast<std::size_t>(state.range(0)), 2);
    const auto lin = ModulusOfContinuity::linear(10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(av_ratio_scan(gamma, lin, policy).max_ratio);
}

void bm_discrete_scan(benchmark::State& state, ExecutionPolicy policy) {
    const auto curve = fixtures::sample_curve(
        fixtures::circle_lift(),
        fixtures::uniform_grid(0.0, 1.0, static_cast<std::size_t>(state.range(0))));
    const auto lin = ModulusOfContinuity::linear(10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            discrete_av_scan(curve, 2, lin, 20000, policy).max_ratio);
}

} // namespace

BENCHMARK_CAPTURE(bm_whitney_scan, serial, ExecutionPolicy::Serial)
    ->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bm_whitney_scan, parallel, ExecutionPolicy::Parallel)
    ->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bm_av_scan, serial, ExecutionPolicy::Serial)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(bm_av_scan, parallel, ExecutionPolicy::Parallel)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(bm_discrete_scan, serial, ExecutionPolicy::Serial)->Arg(24)->Arg(48);
BENCHMARK_CAPTURE(bm_discrete_scan, parallel, ExecutionPolicy::Parallel)
    ->Arg(24)->Arg(48);

BENCHMARK_MAIN();
