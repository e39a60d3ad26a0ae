#include <benchmark/benchmark.h>

#include <opnph/graphdist.hpp>
#include <opnph/opn.hpp>
#include <opnph/persistence.hpp>
#include <opnph/rng.hpp>

using namespace opnph;

namespace {

Matrix random_matrix(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.1 + rng.uniform01();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

void BM_RipsRandom(benchmark::State& state) {
    const Matrix d = random_matrix(static_cast<std::size_t>(state.range(0)), 5);
    for (auto _ : state) {
        auto diagram = rips_persistence(d);
        benchmark::DoNotOptimize(diagram);
    }
}

void BM_RipsCycleSupd(benchmark::State& state) {
    const auto supd = shortest_unweighted_path(
        WeightedNetwork::cycle(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        auto diagram = rips_persistence(supd);
        benchmark::DoNotOptimize(diagram);
    }
}

} // namespace

BENCHMARK(BM_RipsRandom)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RipsCycleSupd)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
