#include <benchmark/benchmark.h>

#include <random>

#include "zsf/automorphism.hpp"
#include "zsf/cube.hpp"
#include "zsf/intlinalg.hpp"
#include "zsf/zerosum.hpp"

using namespace zsf;

static void BM_canonicalize_z333(benchmark::State& state) {
    auto g = GroupSpec::elementary(3, 3);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> elem(1, 26);
    GMultiSet ms(g);
    for (int i = 0; i < 13; ++i) ms.add(elem(rng));
    for (auto _ : state) benchmark::DoNotOptimize(canonical_counts(g, ms.counts()));
}
BENCHMARK(BM_canonicalize_z333);

static void BM_smith_normal_form(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(-9, 9);
    lin::IntMat a(n, n + 1);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n + 1; ++c) a.at(r, c) = entry(rng);
    for (auto _ : state) benchmark::DoNotOptimize(lin::smith_normal_form(a));
}
BENCHMARK(BM_smith_normal_form)->Arg(3)->Arg(4)->Arg(6);

static void BM_zero_sum_subsets(benchmark::State& state) {
    auto cands = cube::enumerate_candidates(13, 2);
    const auto& host = cands[static_cast<size_t>(state.range(0))];
    for (auto _ : state) benchmark::DoNotOptimize(cube::zero_sum_subsets(host));
}
BENCHMARK(BM_zero_sum_subsets)->Arg(0)->Arg(9);

static void BM_disjoint_packing(benchmark::State& state) {
    auto cands = cube::enumerate_candidates(13, 2);
    const auto& host = cands[0];
    for (auto _ : state) benchmark::DoNotOptimize(max_disjoint_zero_sums(host, 3));
}
BENCHMARK(BM_disjoint_packing);

static void BM_reachable_sums_growth(benchmark::State& state) {
    auto g = GroupSpec::parse("7,7");
    for (auto _ : state) {
        SumSet r(g);
        for (int e = 1; e <= 12; ++e) r = r.grown(e % 48 + 1);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_reachable_sums_growth);

BENCHMARK_MAIN();
