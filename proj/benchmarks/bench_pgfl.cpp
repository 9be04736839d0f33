#include <benchmark/benchmark.h>

#include "pgfl/combinatorics.hpp"
#include "pgfl/deconvolution.hpp"
#include "pgfl/process.hpp"
#include "pgfl/series.hpp"

using namespace pgfl;

namespace {

StateSpace<Rational> bench_space(int M)
{
    std::vector<std::string> labels;
    for (int i = 0; i < M; ++i)
        labels.push_back(std::string(1, static_cast<char>('a' + i)));
    return StateSpace<Rational>::counting(std::move(labels));
}

void bm_enumerate_partitions(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        std::size_t count = 0;
        for_each_partition(IndexSubset::full(n), [&](const SetPartition& p) { count += p.blocks.size(); });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(bm_enumerate_partitions)->Arg(6)->Arg(8)->Arg(10);

void bm_quotient_nth_rational(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto f = series_to_derivatives(random_series(n, 1, false));
    const auto g = series_to_derivatives(random_series(n, 2, true));
    for (auto _ : state) {
        Rational value = quotient_nth(f, g, n);
        benchmark::DoNotOptimize(value);
    }
}
BENCHMARK(bm_quotient_nth_rational)->Arg(4)->Arg(6)->Arg(8);

void bm_quotient_nth_float(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto f_exact = series_to_derivatives(random_series(n, 1, false));
    const auto g_exact = series_to_derivatives(random_series(n, 2, true));
    DerivativeVector<double> f, g;
    for (const Rational& v : f_exact)
        f.push_back(to_double(v));
    for (const Rational& v : g_exact)
        g.push_back(to_double(v));
    for (auto _ : state) {
        double value = quotient_nth(f, g, n);
        benchmark::DoNotOptimize(value);
    }
}
BENCHMARK(bm_quotient_nth_float)->Arg(4)->Arg(6)->Arg(8);

void bm_series_div(benchmark::State& state)
{
    const auto f = random_series(static_cast<int>(state.range(0)), 3, false);
    const auto g = random_series(static_cast<int>(state.range(0)), 4, true);
    for (auto _ : state) {
        auto h = series_div(f, g);
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(bm_series_div)->Arg(8)->Arg(16);

void bm_superpose(benchmark::State& state)
{
    const int M = static_cast<int>(state.range(0));
    const int order = static_cast<int>(state.range(1));
    const auto q = random_process(bench_space(M), order, 5);
    const auto r = random_process(bench_space(M), order, 6);
    for (auto _ : state) {
        auto out = superpose(q, r);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(bm_superpose)->Args({2, 4})->Args({3, 4})->Args({3, 5});

void bm_deconvolve_rational(benchmark::State& state)
{
    const int M = static_cast<int>(state.range(0));
    const int order = static_cast<int>(state.range(1));
    const auto q = random_process(bench_space(M), order, 7);
    const auto p = superpose(q, random_process(bench_space(M), order, 8));
    for (auto _ : state) {
        auto result = deconvolve(p, q);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(bm_deconvolve_rational)->Args({2, 4})->Args({3, 4})->Args({3, 5});

void bm_deconvolve_float(benchmark::State& state)
{
    const int M = static_cast<int>(state.range(0));
    const int order = static_cast<int>(state.range(1));
    const auto q = convert_process<double>(random_process(bench_space(M), order, 7));
    const auto p = superpose(q, convert_process<double>(random_process(bench_space(M), order, 8)));
    for (auto _ : state) {
        auto result = deconvolve(p, q);
        benchmark::DoNotOptimize(result);
    }
}
BENCHMARK(bm_deconvolve_float)->Args({2, 4})->Args({3, 4})->Args({3, 5});

} // namespace

BENCHMARK_MAIN();
