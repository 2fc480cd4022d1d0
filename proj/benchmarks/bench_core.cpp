#include <benchmark/benchmark.h>

#include <cmath>

#include "coopcast/bounds.hpp"
#include "coopcast/broadcast.hpp"
#include "coopcast/continuum.hpp"
#include "coopcast/network.hpp"

using namespace coopcast;

namespace {

ModelParams params(double alpha, double lambda) {
    ModelParams p;
    p.alpha = alpha;
    p.lambda = lambda;
    return p;
}

// Window extent chosen so the mean node count matches the range argument.
void bm_broadcast_1d(benchmark::State& state) {
    const auto n = static_cast<double>(state.range(0));
    const auto p = params(1.0, 2.0);
    const auto r = sample(p, Window{1, n / (2.0 * p.lambda)}, 99);
    for (auto _ : state) {
        auto out = run_broadcast(r, p);
        benchmark::DoNotOptimize(out.reached_count);
    }
    state.SetComplexityN(state.range(0));
}

void bm_broadcast_2d(benchmark::State& state) {
    const auto n = static_cast<double>(state.range(0));
    const auto p = params(1.5, 2.0);
    const auto r = sample(p, Window{2, std::sqrt(n / (4.0 * p.lambda))}, 99);
    for (auto _ : state) {
        auto out = run_broadcast(r, p);
        benchmark::DoNotOptimize(out.reached_count);
    }
    state.SetComplexityN(state.range(0));
}

void bm_sample_1d(benchmark::State& state) {
    const auto p = params(1.0, 2.0);
    const Window w{1, static_cast<double>(state.range(0))};
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto r = sample(p, w, seed++);
        benchmark::DoNotOptimize(r.points.data());
    }
}

void bm_poisson_tail(benchmark::State& state) {
    double mu = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(poisson_upper_tail(state.range(0), mu));
        mu += 1e-9;
    }
}

void bm_frontier_2d(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(frontier_2d(1.0, 1.0, 1.0, 0.5));
}

BENCHMARK(bm_broadcast_1d)->RangeMultiplier(4)->Range(64, 4096)->Complexity();
BENCHMARK(bm_broadcast_2d)->RangeMultiplier(4)->Range(64, 1024)->Complexity();
BENCHMARK(bm_sample_1d)->Range(100, 10000);
BENCHMARK(bm_poisson_tail)->Arg(5)->Arg(50);
BENCHMARK(bm_frontier_2d);

} // namespace

BENCHMARK_MAIN();
