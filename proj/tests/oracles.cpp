#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

namespace opnph::testing {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PersistenceDiagram naive_rips_persistence(const Matrix& d) {
    const std::size_t n = d.rows();

    struct Simplex {
        double value;
        int dim;
        std::array<int, 3> verts; // unused slots = -1
    };
    std::vector<Simplex> simplices;
    for (std::size_t i = 0; i < n; ++i)
        simplices.push_back({0.0, 0, {static_cast<int>(i), -1, -1}});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            simplices.push_back({d(i, j), 1, {static_cast<int>(i), static_cast<int>(j), -1}});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                simplices.push_back({std::max({d(i, j), d(i, k), d(j, k)}), 2,
                                     {static_cast<int>(i), static_cast<int>(j),
                                      static_cast<int>(k)}});

    std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.verts < b.verts;
    });

    // Index simplices by identity for boundary lookup.
    auto find_index = [&](int dim, std::array<int, 3> verts) {
        for (std::size_t s = 0; s < simplices.size(); ++s)
            if (simplices[s].dim == dim && simplices[s].verts == verts)
                return s;
        return simplices.size();
    };

    const std::size_t m = simplices.size();
    std::vector<std::vector<std::size_t>> columns(m);
    for (std::size_t s = 0; s < m; ++s) {
        const auto& sx = simplices[s];
        if (sx.dim == 1) {
            columns[s] = {find_index(0, {sx.verts[0], -1, -1}),
                          find_index(0, {sx.verts[1], -1, -1})};
        } else if (sx.dim == 2) {
            columns[s] = {find_index(1, {sx.verts[0], sx.verts[1], -1}),
                          find_index(1, {sx.verts[0], sx.verts[2], -1}),
                          find_index(1, {sx.verts[1], sx.verts[2], -1})};
        }
        std::sort(columns[s].begin(), columns[s].end());
    }

    // Plain left-to-right reduction.
    std::vector<std::size_t> pivot_owner(m, m);
    std::vector<bool> is_pivot_target(m, false);
    std::vector<PersistencePair> pairs;
    for (std::size_t j = 0; j < m; ++j) {
        auto& col = columns[j];
        while (!col.empty() && pivot_owner[col.back()] != m) {
            const auto& other = columns[pivot_owner[col.back()]];
            std::vector<std::size_t> merged;
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(merged));
            col = std::move(merged);
        }
        if (!col.empty()) {
            const std::size_t low = col.back();
            pivot_owner[low] = j;
            is_pivot_target[low] = true;
            pairs.push_back(
                {simplices[low].dim, simplices[low].value, simplices[j].value});
        }
    }
    // Positive simplices (zero column) never killed by a later column are
    // essential in their own dimension.
    for (std::size_t s = 0; s < m; ++s) {
        if (simplices[s].dim > 1) continue;
        const bool positive = columns[s].empty();
        if (positive && !is_pivot_target[s])
            pairs.push_back({simplices[s].dim, simplices[s].value, kInf});
    }
    return PersistenceDiagram(std::move(pairs));
}

namespace {

double linf_cost(const PersistencePair& a, const PersistencePair& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Recursively assign each A point to the diagonal or an unused B point.
void enumerate(const std::vector<PersistencePair>& a, const std::vector<PersistencePair>& b,
               std::size_t i, unsigned used_b, double current_max, double& best) {
    if (current_max >= best) return;
    if (i == a.size()) {
        double total = current_max;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!(used_b & (1u << j)))
                total = std::max(total, 0.5 * (b[j].death - b[j].birth));
        best = std::min(best, total);
        return;
    }
    enumerate(a, b, i + 1, used_b,
              std::max(current_max, 0.5 * (a[i].death - a[i].birth)), best);
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (used_b & (1u << j)) continue;
        enumerate(a, b, i + 1, used_b | (1u << j),
                  std::max(current_max, linf_cost(a[i], b[j])), best);
    }
}

} // namespace

double brute_force_bottleneck(std::span<const PersistencePair> a,
                              std::span<const PersistencePair> b) {
    const std::vector<PersistencePair> va(a.begin(), a.end());
    const std::vector<PersistencePair> vb(b.begin(), b.end());
    double best = kInf;
    enumerate(va, vb, 0, 0u, 0.0, best);
    return best;
}

Matrix random_distance_matrix(SplitMix64& rng, std::size_t n) {
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.25 * static_cast<double>(1 + rng.next() % 12);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

WeightedNetwork random_connected_network(SplitMix64& rng, std::size_t n) {
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    for (std::size_t v = 1; v < n; ++v) {
        const std::size_t u = rng.next() % v;
        edges.emplace_back(u, v, static_cast<double>(1 + rng.next() % 10));
    }
    const std::size_t extra = rng.next() % (n + 1);
    for (std::size_t e = 0; e < extra; ++e) {
        const std::size_t u = rng.next() % n;
        const std::size_t v = rng.next() % n;
        if (u == v) continue;
        const auto a = std::min(u, v), b = std::max(u, v);
        bool duplicate = false;
        for (const auto& [x, y, w] : edges)
            if (x == a && y == b) duplicate = true;
        if (!duplicate) edges.emplace_back(a, b, static_cast<double>(1 + rng.next() % 10));
    }
    return WeightedNetwork::from_edges(n, edges);
}

std::vector<PersistencePair> random_diagram(SplitMix64& rng, std::size_t max_points) {
    const std::size_t count = rng.next() % (max_points + 1);
    std::vector<PersistencePair> pairs;
    for (std::size_t i = 0; i < count; ++i) {
        const double birth = 0.25 * static_cast<double>(rng.next() % 8);
        const double pers = 0.25 * static_cast<double>(rng.next() % 8);
        pairs.push_back({1, birth, birth + pers});
    }
    return pairs;
}

} // namespace opnph::testing
