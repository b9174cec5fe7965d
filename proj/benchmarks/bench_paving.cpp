#include <benchmark/benchmark.h>

#include <random>

#include "paving/constructions.hpp"
#include "paving/matrix.hpp"
#include "paving/paving.hpp"

using namespace paving;

static void BM_HermitianEigenvalues(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    const auto f = build_nonpavable_general(4, 4);
    std::vector<std::size_t> rows(dim);
    for (std::size_t i = 0; i < dim; ++i) rows[i] = (i * 7) % f.size();
    const auto g = gram(select_rows(f.vectors(), rows));
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(g));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_BuildGeneral(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_nonpavable_general(r, 8));
}
BENCHMARK(BM_BuildGeneral)->Arg(2)->Arg(4)->Arg(8);

static void BM_ExhaustiveSearchTwoBlock(benchmark::State& state) {
    const auto f = build_nonpavable_r2(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(best_partition_riesz(f, 2));
}
BENCHMARK(BM_ExhaustiveSearchTwoBlock)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Witness(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    const std::size_t n = 4;
    const auto f = build_nonpavable_general(r, n);
    const auto s = delta_schedule(r, n);
    std::uint64_t sample = 0;
    for (auto _ : state) {
        const auto p = sampled_partition(1, sample++, f.size(), r);
        benchmark::DoNotOptimize(witness_coefficients(f, s, p));
    }
}
BENCHMARK(BM_Witness)->Arg(2)->Arg(3)->Arg(4);

static void BM_DoubledFamily(benchmark::State& state) {
    const auto seed = build_nonpavable_r2(2);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(doubled_family(seed, k));
}
BENCHMARK(BM_DoubledFamily)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK_MAIN();
