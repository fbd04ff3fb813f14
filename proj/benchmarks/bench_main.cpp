#include <benchmark/benchmark.h>

#include <superlax/gd.hpp>
#include <superlax/hierarchy.hpp>
#include <superlax/spdo.hpp>

using namespace superlax;

static void bm_compose_lax(benchmark::State &state)
{
    const int N = static_cast<int>(state.range(0));
    const spdo L = lax_operator(N);
    const spdo Linv = inverse(L, truncation{8});
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(L, Linv, truncation{8}));
    }
}
BENCHMARK(bm_compose_lax)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void bm_root(benchmark::State &state)
{
    const int N = static_cast<int>(state.range(0));
    const int q = N % 2 ? N : N / 2;
    const spdo L = lax_operator(N);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fractional_power(L, 1, q, truncation{static_cast<int>(state.range(1))}));
    }
}
BENCHMARK(bm_root)->Args({3, 6})->Args({4, 6})->Args({3, 10})->Unit(benchmark::kMillisecond);

static void bm_quadratic_axioms(benchmark::State &state)
{
    const int N = static_cast<int>(state.range(0));
    const bracket_table table = generator_table(gd_kind::quadratic, N);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_axioms(table));
    }
}
BENCHMARK(bm_quadratic_axioms)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void bm_flow(benchmark::State &state)
{
    const flow_spec f = flow_spec::make(4, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(flow_rhs(f, truncation{2}));
    }
}
BENCHMARK(bm_flow)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
