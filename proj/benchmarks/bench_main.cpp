#include "cubesplit/constructions.hpp"
#include "cubesplit/dp.hpp"
#include "cubesplit/search.hpp"
#include "cubesplit/splitting.hpp"
#include "cubesplit/unitrade.hpp"
#include "cubesplit/unitrade_space.hpp"

#include <benchmark/benchmark.h>

using namespace cubesplit;

namespace {

void BM_VerifyFull(benchmark::State& state)
{
    const Splitting s = product(seed(SeedName::Q4_K3), seed(SeedName::Q4_K3));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify(s, VerifyMode::FullEnumeration));
}
BENCHMARK(BM_VerifyFull)->Unit(benchmark::kMillisecond);

void BM_VerifyPairwise(benchmark::State& state)
{
    const Splitting s = product(seed(SeedName::Q4_K3), seed(SeedName::Q4_K3));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify(s, VerifyMode::DisjointPlusVolume));
}
BENCHMARK(BM_VerifyPairwise)->Unit(benchmark::kMillisecond);

void BM_Product(benchmark::State& state)
{
    const Splitting a = seed(SeedName::Q8_K5_A);
    const Splitting b = seed(SeedName::Q4_K3);
    for (auto _ : state)
        benchmark::DoNotOptimize(product(a, b));
}
BENCHMARK(BM_Product)->Unit(benchmark::kMicrosecond);

void BM_Beta(benchmark::State& state)
{
    const Splitting s = seed(SeedName::Q8_K5_A);
    for (auto _ : state)
        benchmark::DoNotOptimize(beta(s));
}
BENCHMARK(BM_Beta)->Unit(benchmark::kMicrosecond);

// Exhaustive nonexistence search; a single worker keeps timings comparable.
void BM_SearchNonexistence(benchmark::State& state)
{
    SearchOptions opts;
    opts.workers = 1;
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(search_antipodal_splittings(n, k, opts));
}
BENCHMARK(BM_SearchNonexistence)->Args({6, 4})->Args({7, 5})->Unit(benchmark::kMillisecond);

void BM_KernelBasis(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(unitrade_space_basis(n, 5));
}
BENCHMARK(BM_KernelBasis)->Arg(7)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_SpanWalk(benchmark::State& state)
{
    const UnitradeSpace space = unitrade_space_basis(8, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(span_elements_of_weight(space, 16, 1));
}
BENCHMARK(BM_SpanWalk)->Unit(benchmark::kMillisecond);

void BM_CanonicalUnitrade(benchmark::State& state)
{
    const Unitrade u = catalog(CatalogName::E16);
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_unitrade(u));
}
BENCHMARK(BM_CanonicalUnitrade)->Unit(benchmark::kMicrosecond);

void BM_CanonicalSplitting(benchmark::State& state)
{
    const Splitting s = seed(SeedName::Q8_K5_B);
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_splitting(s));
}
BENCHMARK(BM_CanonicalSplitting)->Unit(benchmark::kMillisecond);

void BM_Decide2dp(benchmark::State& state)
{
    const Hypergraph h = covering_to_hypergraph(antipodal_pairs(seed(SeedName::Q4_K3)), 4).first;
    for (auto _ : state)
        benchmark::DoNotOptimize(decide_2dp(h));
}
BENCHMARK(BM_Decide2dp)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
