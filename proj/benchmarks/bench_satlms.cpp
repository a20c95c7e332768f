#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "satlms/erf.hpp"
#include "satlms/moments.hpp"
#include "satlms/ode.hpp"
#include "satlms/sim.hpp"
#include "satlms/theory.hpp"

namespace {

void bench_erf(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(satlms::erf(x));
    }
}
BENCHMARK(bench_erf);

void bench_closed_moments(benchmark::State& state) {
    const auto nl = satlms::saturation(0.8);
    double r = 0.1;
    for (auto _ : state) {
        r += 1e-9;
        benchmark::DoNotOptimize(
            satlms::moments::closed_form_moments(nl, 1.0, 1.0, {r, 0.5}));
    }
}
BENCHMARK(bench_closed_moments);

void bench_oracle_moments(benchmark::State& state) {
    const auto nl = satlms::saturation(0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            satlms::moments::oracle_moments(nl, 1.0, 1.0, {0.1, 0.5}));
    }
}
BENCHMARK(bench_oracle_moments);

void bench_ode_step(benchmark::State& state) {
    satlms::ExperimentConfig c;
    c.nonlinearity = satlms::saturation(0.8);
    satlms::MacroState st{0.2, 0.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(satlms::ode::rhs(c, st));
    }
}
BENCHMARK(bench_ode_step);

/// Full-trial throughput; the counter reports filter updates per second.
void bench_trial(benchmark::State& state) {
    const auto taps = static_cast<std::size_t>(state.range(0));
    satlms::sim::SimPlan plan;
    plan.config.taps = taps;
    plan.config.mu = 0.5;
    plan.config.nonlinearity = satlms::saturation(1.0);
    std::vector<double> raw(taps);
    for (std::size_t i = 0; i < taps; ++i) {
        raw[i] = std::cos(0.9 * static_cast<double>(i));
    }
    plan.g = satlms::normalize_impulse_response(raw, taps, 1.0);
    plan.steps = 4 * taps;
    plan.record_every = plan.steps;
    std::size_t trial = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(satlms::sim::run_trial(plan, trial++));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(plan.steps));
}
BENCHMARK(bench_trial)->Arg(64)->Arg(400);

} // namespace

BENCHMARK_MAIN();
