#include <benchmark/benchmark.h>

#include <opnph/diagmetric.hpp>
#include <opnph/rng.hpp>

#include <vector>

using namespace opnph;

namespace {

std::vector<PersistencePair> random_diagram(std::size_t count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<PersistencePair> pairs;
    for (std::size_t i = 0; i < count; ++i) {
        const double birth = rng.uniform01();
        pairs.push_back({1, birth, birth + rng.uniform01()});
    }
    return pairs;
}

void BM_Bottleneck(benchmark::State& state) {
    const auto a = random_diagram(static_cast<std::size_t>(state.range(0)), 3);
    const auto b = random_diagram(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bottleneck(a, b));
    }
}

} // namespace

BENCHMARK(BM_Bottleneck)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
