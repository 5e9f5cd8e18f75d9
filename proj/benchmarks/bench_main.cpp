#include <benchmark/benchmark.h>

#include "knv/constructions.hpp"
#include "knv/cycle_method.hpp"
#include "knv/freeness.hpp"
#include "knv/posets.hpp"
#include "knv/search.hpp"

using namespace knv;

static void BM_VexExactN4(benchmark::State& state) {
    const PatternGraph g = state.range(0) == 0 ? clique(3) : cycle(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vex_exact(GroundSize(4), g).value);
    }
}
BENCHMARK(BM_VexExactN4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_VexExactN5Threads(benchmark::State& state) {
    SearchBudget b;
    b.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(vex_exact(GroundSize(5), cycle(5), b).value);
    }
}
BENCHMARK(BM_VexExactN5Threads)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_IsFreeThreshold(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Family f = threshold_family(GroundSize(n), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_free(f, clique(3)));
    }
    state.counters["sets"] = static_cast<double>(f.size());
}
BENCHMARK(BM_IsFreeThreshold)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

static void BM_InducedKneser(benchmark::State& state) {
    const Family f = Family::cube(GroundSize(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(induced_kneser(f).edge_count());
    }
}
BENCHMARK(BM_InducedKneser)->DenseRange(8, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_PosetCopy(benchmark::State& state) {
    const Family f = level_slice(GroundSize(static_cast<int>(state.range(0))), 2, 3);
    const Poset p = butterfly();
    for (auto _ : state) {
        benchmark::DoNotOptimize(contains_poset_copy(f, p).has_value());
    }
}
BENCHMARK(BM_PosetCopy)->DenseRange(4, 8, 2);

static void BM_DoubleCount(benchmark::State& state) {
    const Family f = level_slice(GroundSize(7), 1, 6);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(double_count_check(f, threads).equal);
    }
}
BENCHMARK(BM_DoubleCount)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
