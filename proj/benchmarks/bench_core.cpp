#include <benchmark/benchmark.h>

#include "snb/counting.hpp"
#include "snb/fredholm.hpp"
#include "snb/ordered.hpp"
#include "snb/specfun.hpp"

using namespace snb;

static void specfun_sin_cos_integral(benchmark::State& state)
{
    for (auto _ : state) {
        for (int i = 1; i <= 1000; ++i) {
            const double x = 0.05 * i;
            benchmark::DoNotOptimize(sin_integral(x));
            benchmark::DoNotOptimize(cos_integral(x));
        }
    }
    state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(specfun_sin_cos_integral);

static void specfun_clausen2(benchmark::State& state)
{
    for (auto _ : state) {
        for (int i = 1; i <= 1000; ++i)
            benchmark::DoNotOptimize(clausen2(0.006 * i));
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(specfun_clausen2);

static void specfun_gauss_legendre(benchmark::State& state)
{
    const auto n = std::size_t(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gauss_legendre(n, 0.0, 1.0));
}
BENCHMARK(specfun_gauss_legendre)->RangeMultiplier(2)->Range(32, 512);

static void fredholm_nystrom_eigenvalues(benchmark::State& state)
{
    const KernelSpec kernel{KernelVariant::full_sine, 10.0};
    const auto rule = gauss_legendre(std::size_t(state.range(0)), 0.0, kernel.interval_length);
    for (auto _ : state)
        benchmark::DoNotOptimize(nystrom_eigenvalues(kernel, rule));
}
BENCHMARK(fredholm_nystrom_eigenvalues)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMicrosecond);

static void fredholm_counting_probabilities(benchmark::State& state)
{
    const double s = double(state.range(0));
    const auto beta = SymmetryClass(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(counting_probabilities(beta, s, lmax_for(s)));
}
BENCHMARK(fredholm_counting_probabilities)
    ->ArgsProduct({{2, 10, 40}, {int(SymmetryClass::orthogonal), int(SymmetryClass::unitary),
                                 int(SymmetryClass::symplectic)}})
    ->Unit(benchmark::kMillisecond);

static void counting_gap_integrals(benchmark::State& state)
{
    const auto lmax = std::size_t(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gap_integrals(SymmetryClass::unitary, lmax));
}
BENCHMARK(counting_gap_integrals)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void ordered_variance_sweep(benchmark::State& state)
{
    const auto cov = autocovariances(gap_integrals(SymmetryClass::unitary, 8));
    for (auto _ : state) {
        for (std::size_t L = 1; L <= cov.lmax(); ++L)
            benchmark::DoNotOptimize(ordered_variance(cov, L));
    }
}
BENCHMARK(ordered_variance_sweep);

BENCHMARK_MAIN();
