#include <benchmark/benchmark.h>

#include "fslgeom/batch.hpp"
#include "fslgeom/verify.hpp"

using namespace fslgeom;

namespace {

std::vector<Holonomy6> samples(int n) {
    Rng rng(1);
    std::vector<Holonomy6> s(n);
    for (auto& h : s) h = random_holonomy(rng, 0.3);
    return s;
}

void volumes(benchmark::State& state, Exec exec) {
    const auto s = samples(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(block_volumes(s, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void residuals(benchmark::State& state, Exec exec) {
    const auto s = samples(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(explicit_residuals(s, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sweeps(benchmark::State& state, Exec exec) {
    const FslComplex x = doubled_tetrahedron(std::vector<cplx>(6, 0.0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep(x, 0, 0.0, 0.5, int(state.range(0)), exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(volumes, serial, Exec::Serial)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(volumes, parallel, Exec::Parallel)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(residuals, serial, Exec::Serial)->Arg(10000);
BENCHMARK_CAPTURE(residuals, parallel, Exec::Parallel)->Arg(10000);
BENCHMARK_CAPTURE(sweeps, serial, Exec::Serial)->Arg(1000);
BENCHMARK_CAPTURE(sweeps, parallel, Exec::Parallel)->Arg(1000);

BENCHMARK_MAIN();
