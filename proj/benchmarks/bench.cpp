#include "spherepack/geometry.hpp"
#include "spherepack/matern.hpp"
#include "spherepack/optimizer.hpp"
#include "spherepack/specialfn.hpp"

#include <benchmark/benchmark.h>

using namespace spherepack;

static void BM_BesselJ(benchmark::State& state) {
    const double nu = static_cast<double>(state.range(0));
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_j(nu, x));
        x = x < 150.0 ? x + 0.37 : 0.5;
    }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(5)->Arg(50)->Arg(100);

static void BM_FirstZero(benchmark::State& state) {
    const double nu = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(first_zero(nu));
}
BENCHMARK(BM_FirstZero)->Arg(2)->Arg(100);

static void BM_TerminalGap(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(terminal_gap(d));
}
BENCHMARK(BM_TerminalGap)->Arg(3)->Arg(24)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Alpha2Integral(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    double r = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha2_integral(d, r, 1.0));
        r = r < 1.9 ? r + 0.013 : 0.01;
    }
}
BENCHMARK(BM_Alpha2Integral)->Arg(1)->Arg(3)->Arg(24)->Arg(200);

static void BM_Alpha2Series(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    double r = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha2_series(d, r, 1.0));
        r = r < 1.9 ? r + 0.013 : 0.01;
    }
}
BENCHMARK(BM_Alpha2Series)->Arg(3)->Arg(12);

static void BM_GhostRsa1d(benchmark::State& state) {
    MaternConfig c;
    c.d = 1;
    c.box_length = static_cast<double>(state.range(0));
    c.time_horizon = 4.6;
    for (auto _ : state) {
        ++c.seed;
        benchmark::DoNotOptimize(simulate(c));
    }
}
BENCHMARK(BM_GhostRsa1d)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
