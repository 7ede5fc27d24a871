#include <benchmark/benchmark.h>

#include <random>

#include "finsheaf/zmod.hpp"

using namespace finsheaf;

namespace {

Mat random_mat(std::size_t n, i64 N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mat A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = static_cast<i64>(rng() % static_cast<std::uint64_t>(N));
    return A;
}

void BM_smith(benchmark::State& state) {
    const Mat A = random_mat(static_cast<std::size_t>(state.range(0)), 360, 5);
    for (auto _ : state) benchmark::DoNotOptimize(smith(A, 360));
}

void BM_smith_serial(benchmark::State& state) {
    const Mat A = random_mat(static_cast<std::size_t>(state.range(0)), 360, 5);
    for (auto _ : state) benchmark::DoNotOptimize(smith_serial(A, 360));
}

}  // namespace

BENCHMARK(BM_smith)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_smith_serial)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
