#include <doctest.h>

#include <opnph/dynsys.hpp>
#include <opnph/errors.hpp>
#include <opnph/graphdist.hpp>
#include <opnph/opn.hpp>
#include <opnph/rng.hpp>

#include <cmath>

using namespace opnph;

namespace {

Permutation perm(std::vector<int> order) { return Permutation(std::move(order)); }

Signal signal_of(std::vector<double> samples) {
    Signal s;
    s.samples = std::move(samples);
    s.fs = 1.0;
    return s;
}

// Network from an explicit symbol sequence over permutations of {0,1,2}.
WeightedNetwork network_of(const std::vector<Permutation>& symbols) {
    PermutationSequence seq;
    seq.symbols = symbols;
    seq.n = 3;
    seq.tau = 1;
    return build_network(seq);
}

} // namespace

TEST_CASE("permutation_of sorts ascending with first-index ties") {
    CHECK(permutation_of(std::vector<double>{1.0, 3.0, 2.0}) == perm({0, 2, 1}));
    CHECK(permutation_of(std::vector<double>{5.0, 4.0, 3.0}) == perm({2, 1, 0}));
    CHECK(permutation_of(std::vector<double>{2.0, 2.0, 1.0}) == perm({2, 0, 1}));
    CHECK_THROWS_AS(permutation_of(std::vector<double>{1.0, std::nan("")}), InvalidInputError);
    CHECK_THROWS_AS(permutation_of(std::vector<double>{1.0}), InvalidInputError);
}

TEST_CASE("permutation_of is invariant to shifts and positive scaling") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> window(5), shifted(5), scaled(5);
        for (int i = 0; i < 5; ++i) {
            window[i] = rng.uniform01() * 10.0 - 5.0;
            shifted[i] = window[i] + 17.25;
            scaled[i] = window[i] * 3.5;
        }
        const Permutation base = permutation_of(window);
        CHECK(permutation_of(shifted) == base);
        CHECK(permutation_of(scaled) == base);
    }
}

TEST_CASE("embed walks the delay windows in time order") {
    SUBCASE("sawtooth cycles through three permutations") {
        const Signal saw = signal_of({0, 1, 2, 0, 1, 2, 0, 1, 2});
        const PermutationSequence seq = embed(saw, 3, 1);
        REQUIRE(seq.symbols.size() == 7);
        CHECK(seq.symbols[0] == perm({0, 1, 2}));
        CHECK(seq.symbols[1] == perm({2, 0, 1}));
        CHECK(seq.symbols[2] == perm({1, 2, 0}));
        CHECK(seq.symbols[3] == seq.symbols[0]);
        CHECK(seq.symbols[4] == seq.symbols[1]);
        CHECK(seq.symbols[6] == seq.symbols[0]);
    }
    SUBCASE("monotone ramp gives the identity permutation throughout") {
        const Signal ramp = signal_of({1, 2, 3, 4, 5, 6, 7});
        const PermutationSequence seq = embed(ramp, 3, 2);
        REQUIRE(seq.symbols.size() == 3);
        for (const auto& s : seq.symbols) CHECK(s == perm({0, 1, 2}));
    }
    SUBCASE("boundary length yields exactly one symbol") {
        const Signal five = signal_of({3, 1, 4, 1, 5});
        const PermutationSequence seq = embed(five, 3, 2);
        CHECK(seq.symbols.size() == 1);
        CHECK_THROWS_AS(embed(signal_of({3, 1, 4, 1}), 3, 2), LengthError);
    }
}

TEST_CASE("build_network counts undirected state-changing transitions") {
    const Permutation a = perm({0, 1, 2});
    const Permutation b = perm({1, 2, 0});
    const Permutation c = perm({2, 0, 1});

    SUBCASE("three-cycle with every edge weight 2") {
        const WeightedNetwork net = network_of({a, b, c, a, b, c, a});
        REQUIRE(net.vertex_count() == 3);
        CHECK(net.weight(0, 1) == 2.0);
        CHECK(net.weight(1, 2) == 2.0);
        CHECK(net.weight(2, 0) == 2.0);
        CHECK(net.total_edge_weight() == 6.0);
    }
    SUBCASE("alternation accumulates on a single edge") {
        const WeightedNetwork net = network_of({a, b, a, b, a});
        REQUIRE(net.vertex_count() == 2);
        CHECK(net.weight(0, 1) == 4.0);
    }
    SUBCASE("consecutive repeats contribute nothing") {
        const WeightedNetwork net = network_of({a, a, a, b});
        REQUIRE(net.vertex_count() == 2);
        CHECK(net.weight(0, 1) == 1.0);
        for (std::size_t v = 0; v < 2; ++v) CHECK(net.weight(v, v) == 0.0);
    }
    SUBCASE("all-identical sequence is degenerate") {
        CHECK_THROWS_AS(network_of({a, a, a, a}), DegenerateError);
    }
}

TEST_CASE("total edge weight equals the number of state changes") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Signal s;
        s.fs = 1.0;
        for (int i = 0; i < 120; ++i) s.samples.push_back(rng.uniform01());
        const PermutationSequence seq = embed(s, 3, 2);
        std::size_t changes = 0;
        for (std::size_t i = 0; i + 1 < seq.symbols.size(); ++i)
            if (!(seq.symbols[i] == seq.symbols[i + 1])) ++changes;
        const WeightedNetwork net = build_network(seq);
        CHECK(net.total_edge_weight() == static_cast<double>(changes));
        CHECK(net.vertex_count() <= 6); // at most 3! states
    }
}

TEST_CASE("periodic lorenz network is small and connected") {
    const SystemSpec spec = find_system("lorenz", DynamicState::periodic);
    Signal signal = integrate(spec, 100.0, 100.0, spec.initial_state);
    signal = trim(signal, 0.2);
    const PermutationSequence seq = embed(signal, 6, 17);
    const WeightedNetwork net = build_network(seq);
    CHECK(net.vertex_count() < 720 / 4); // far below 6!
    CHECK(is_connected(net));
    CHECK(net.vertices.size() == net.vertex_count());
}
