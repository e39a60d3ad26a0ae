#include <benchmark/benchmark.h>

#include <opnph/graphdist.hpp>
#include <opnph/opn.hpp>
#include <opnph/rng.hpp>

#include <tuple>
#include <vector>

using namespace opnph;

namespace {

WeightedNetwork random_network(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.emplace_back(rng.next() % v, v, static_cast<double>(1 + rng.next() % 20));
    for (std::size_t e = 0; e < 3 * n; ++e) {
        const std::size_t u = rng.next() % n;
        const std::size_t v = rng.next() % n;
        if (u != v && std::get<0>(edges[e % edges.size()]) != u)
            edges.emplace_back(std::min(u, v), std::max(u, v),
                               static_cast<double>(1 + rng.next() % 20));
    }
    return WeightedNetwork::from_edges(n, edges);
}

void BM_DijkstraInverse(benchmark::State& state) {
    const WeightedNetwork net = random_network(static_cast<std::size_t>(state.range(0)), 11);
    for (auto _ : state) {
        auto d = shortest_weighted_path(net);
        benchmark::DoNotOptimize(d);
    }
}

void BM_DiffusionDistance(benchmark::State& state) {
    const WeightedNetwork net = random_network(static_cast<std::size_t>(state.range(0)), 13);
    const int t = default_t(net);
    for (auto _ : state) {
        auto d = diffusion_distance(net, t);
        benchmark::DoNotOptimize(d);
    }
}

} // namespace

BENCHMARK(BM_DijkstraInverse)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiffusionDistance)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
