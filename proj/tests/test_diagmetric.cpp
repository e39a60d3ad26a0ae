#include <doctest.h>

#include <opnph/diagmetric.hpp>
#include <opnph/errors.hpp>
#include <opnph/rng.hpp>

#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace opnph;

namespace {

std::vector<PersistencePair> d1(std::initializer_list<std::pair<double, double>> pts) {
    std::vector<PersistencePair> out;
    for (const auto& [b, d] : pts) out.push_back({1, b, d});
    return out;
}

PersistenceDiagram diagram_of(std::vector<PersistencePair> pairs) {
    return PersistenceDiagram(std::move(pairs));
}

} // namespace

TEST_CASE("bottleneck basics") {
    const auto a = d1({{0.0, 2.0}, {1.0, 3.0}});
    CHECK(bottleneck(a, a) == 0.0);

    const auto single = d1({{0.0, 2.0}});
    const std::vector<PersistencePair> empty;
    CHECK(bottleneck(single, empty) == 1.0); // matched to the diagonal at pers/2
    CHECK(bottleneck(empty, single) == 1.0);
    CHECK(bottleneck(empty, empty) == 0.0);
}

TEST_CASE("infinite deaths are rejected") {
    std::vector<PersistencePair> essential{{0, 0.0, std::numeric_limits<double>::infinity()}};
    CHECK_THROWS_AS(bottleneck(essential, essential), InvalidInputError);
}

TEST_CASE("zero-persistence points never change the distance") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testing::random_diagram(rng, 5);
        auto b = testing::random_diagram(rng, 5);
        const double base = bottleneck(a, b);
        a.push_back({1, 0.75, 0.75});
        b.push_back({1, 1.25, 1.25});
        CHECK(bottleneck(a, b) == base);
    }
}

TEST_CASE("agrees exactly with exhaustive matching enumeration") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = testing::random_diagram(rng, 5);
        const auto b = testing::random_diagram(rng, 5);
        const double fast = bottleneck(a, b);
        const double brute = testing::brute_force_bottleneck(a, b);
        CHECK(std::abs(fast - brute) <= 1e-12);
    }
}

TEST_CASE("metric behavior on random diagrams") {
    SplitMix64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_diagram(rng, 6);
        const auto b = testing::random_diagram(rng, 6);
        const auto c = testing::random_diagram(rng, 6);
        const double ab = bottleneck(a, b);
        const double ba = bottleneck(b, a);
        const double bc = bottleneck(b, c);
        const double ac = bottleneck(a, c);
        CHECK(ab == ba);
        CHECK(ab >= 0.0);
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("never exceeds the empty-matching bound") {
    SplitMix64 rng(83);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_diagram(rng, 6);
        const auto b = testing::random_diagram(rng, 6);
        double bound = 0.0;
        for (const auto& p : a) bound = std::max(bound, 0.5 * (p.death - p.birth));
        for (const auto& p : b) bound = std::max(bound, 0.5 * (p.death - p.birth));
        CHECK(bottleneck(a, b) <= bound + 1e-15);
    }
}

TEST_CASE("distinct diagrams have positive distance") {
    const auto a = d1({{0.0, 2.0}});
    const auto b = d1({{0.0, 3.0}});
    CHECK(bottleneck(a, b) > 0.0);
}

TEST_CASE("normalized bottleneck divides by half total persistence") {
    const PersistenceDiagram ref = diagram_of(d1({{0.0, 2.0}}));
    const PersistenceDiagram same = ref;
    CHECK(normalized_bottleneck(ref, same) == 0.0);

    const PersistenceDiagram empty;
    CHECK(normalized_bottleneck(ref, empty) == 1.0); // d_B = 1 over denominator 1

    const PersistenceDiagram degenerate = diagram_of(d1({{1.0, 1.0}}));
    CHECK_THROWS_AS(normalized_bottleneck(degenerate, ref), DegenerateError);
}

TEST_CASE("pairwise bottleneck matrices") {
    const PersistenceDiagram a = diagram_of(d1({{0.0, 2.0}, {1.0, 4.0}}));
    const PersistenceDiagram b = a;
    const std::vector<PersistenceDiagram> pairably{a, b};
    const std::vector<DynamicState> labels{DynamicState::periodic, DynamicState::chaotic};

    const DiagramDistanceMatrix m = pairwise_bottleneck(pairably, labels);
    CHECK(m.values(0, 1) == 0.0);
    CHECK(m.values(1, 0) == 0.0);
    CHECK(m.labels == labels);

    const std::vector<PersistenceDiagram> one{a};
    CHECK_THROWS_AS(pairwise_bottleneck(one, {}), InvalidInputError);

    SplitMix64 rng(71);
    std::vector<PersistenceDiagram> diagrams;
    for (int i = 0; i < 5; ++i) diagrams.push_back(diagram_of(testing::random_diagram(rng, 6)));
    const DiagramDistanceMatrix big = pairwise_bottleneck(diagrams, {});
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(big.values(i, i) == 0.0);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(big.values(i, j) == big.values(j, i));
            for (std::size_t k = 0; k < 5; ++k)
                CHECK(big.values(i, j) <= big.values(i, k) + big.values(k, j) + 1e-9);
        }
    }
}
