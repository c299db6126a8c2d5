// Serial reference kernels against their OpenMP counterparts.
//
//   ./bench_kernels --benchmark_filter=zz
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "tfim/evolution.hpp"
#include "tfim/kernels.hpp"
#include "tfim/observables.hpp"

using namespace tfim;
using kernels::cplx;

namespace {

std::vector<cplx> random_state(int n) {
    std::mt19937 rng(42);
    std::normal_distribution<double> dist;
    std::vector<cplx> v(std::size_t{1} << n);
    for (auto &a : v) {
        a = cplx(dist(rng), dist(rng));
    }
    return v;
}

template <void (*Apply)(std::span<cplx>, int, int, double)>
void bm_rx(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto v = random_state(n);
    for (auto _ : state) {
        Apply(v, n, n / 2, 0.3);
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(v.size() * sizeof(cplx)));
}

template <void (*Apply)(std::span<cplx>, int, int, int, double)>
void bm_zz(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto v = random_state(n);
    for (auto _ : state) {
        Apply(v, n, 1, n - 2, 0.3);
        benchmark::ClobberMemory();
    }
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(v.size() * sizeof(cplx)));
}

template <kernels::ZMoments (*Moments)(std::span<const cplx>, int)>
void bm_moments(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto v = random_state(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Moments(v, n));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(v.size() * sizeof(cplx)));
}

void bm_z2_mps(benchmark::State &state) {
    const Backend backend = state.range(0) == 0 ? Backend::serial : Backend::parallel;
    ModelParams p;
    p.steps = 4;
    const EvolutionResult r = run_evolution(build_grid(4, 5), p, 64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(z2_tot_mps(r.mps, backend));
    }
    state.SetLabel(backend == Backend::serial ? "serial" : "omp");
}

} // namespace

BENCHMARK(bm_rx<kernels::serial::apply_rx>)->Name("rx/serial")->DenseRange(16, 22, 3);
BENCHMARK(bm_rx<kernels::omp::apply_rx>)->Name("rx/omp")->DenseRange(16, 22, 3);
BENCHMARK(bm_zz<kernels::serial::apply_zz>)->Name("zz/serial")->DenseRange(16, 22, 3);
BENCHMARK(bm_zz<kernels::omp::apply_zz>)->Name("zz/omp")->DenseRange(16, 22, 3);
BENCHMARK(bm_moments<kernels::serial::z_moments>)->Name("z_moments/serial")->DenseRange(16, 22, 3);
BENCHMARK(bm_moments<kernels::omp::z_moments>)->Name("z_moments/omp")->DenseRange(16, 22, 3);
BENCHMARK(bm_z2_mps)->Name("z2_tot_mps")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
