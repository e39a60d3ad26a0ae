#include "opnph/persistence.hpp"

#include "opnph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace opnph {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool PersistencePair::essential() const { return std::isinf(death); }

PersistenceDiagram::PersistenceDiagram(std::vector<PersistencePair> pairs)
    : pairs_(std::move(pairs)) {}

std::vector<PersistencePair> PersistenceDiagram::finite_pairs(int dimension) const {
    std::vector<PersistencePair> out;
    for (const auto& p : pairs_)
        if (p.dimension == dimension && !p.essential()) out.push_back(p);
    return out;
}

std::vector<PersistencePair> PersistenceDiagram::positive_pairs(int dimension) const {
    std::vector<PersistencePair> out;
    for (const auto& p : pairs_)
        if (p.dimension == dimension && !p.essential() && p.death > p.birth) out.push_back(p);
    return out;
}

std::size_t PersistenceDiagram::essential_count(int dimension) const {
    std::size_t n = 0;
    for (const auto& p : pairs_)
        if (p.dimension == dimension && p.essential()) ++n;
    return n;
}

namespace {

// Union-find with path halving.
struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // Returns false if already joined.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        // Smaller root survives so the ordering is deterministic.
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// Z2 sum of two sorted index lists.
void xor_into(std::vector<std::uint32_t>& acc, const std::vector<std::uint32_t>& other,
              std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(acc.begin(), acc.end(), other.begin(), other.end(),
                                  std::back_inserter(scratch));
    acc.swap(scratch);
}

void validate_input(const Matrix& d, const RipsOptions& options) {
    if (d.rows() != d.cols()) throw InvalidInputError("rips_persistence: matrix not square");
    if (d.rows() == 0) throw InvalidInputError("rips_persistence: empty matrix");
    // 2047 is the hard packing limit for triangle keys below.
    const std::size_t cap = std::min<std::size_t>(options.vertex_cap, 2047);
    if (d.rows() > cap)
        throw SizeError("rips_persistence: vertex count " + std::to_string(d.rows()) +
                        " exceeds cap " + std::to_string(cap));
    for (std::size_t i = 0; i < d.rows(); ++i) {
        if (d(i, i) != 0.0) throw InvalidInputError("rips_persistence: nonzero diagonal");
        for (std::size_t j = i + 1; j < d.cols(); ++j) {
            const double v = d(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw InvalidInputError("rips_persistence: entries must be finite and >= 0");
            if (v != d(j, i)) throw InvalidInputError("rips_persistence: matrix not symmetric");
        }
    }
    if (options.max_dim != 1)
        throw InvalidInputError("rips_persistence: only max_dim = 1 is supported");
}

} // namespace

PersistenceDiagram rips_persistence(const Matrix& d, const RipsOptions& options) {
    validate_input(d, options);
    const std::size_t n = d.rows();
    std::vector<PersistencePair> pairs;

    // Edges sorted by (value, lexicographic vertex pair); rank in this order
    // is the edge's position in the filtration among 1-simplices.
    struct Edge {
        double value;
        std::uint32_t u, v;
    };
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            edges.push_back({d(i, j), i, j});
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    const std::size_t n_edges = edges.size();

    // H0: an edge joining two components pairs a vertex (born at 0) with the
    // edge's value; the rest are positive and become H1 birth candidates.
    UnionFind components(n);
    std::vector<bool> edge_positive(n_edges, false);
    for (std::size_t r = 0; r < n_edges; ++r) {
        if (components.unite(edges[r].u, edges[r].v)) {
            pairs.push_back({0, 0.0, edges[r].value});
        } else {
            edge_positive[r] = true;
        }
    }
    pairs.push_back({0, 0.0, kInf}); // the essential component

    if (options.max_dim >= 1 && n >= 3) {
        // Distinct filtration values, so triangles can be ordered by value
        // without storing doubles.
        std::vector<double> unique_values;
        unique_values.reserve(n_edges);
        for (const auto& e : edges)
            if (unique_values.empty() || e.value != unique_values.back())
                unique_values.push_back(e.value);
        std::vector<std::uint32_t> edge_value_idx(n_edges);
        {
            std::uint32_t idx = 0;
            for (std::size_t r = 0; r < n_edges; ++r) {
                if (r > 0 && edges[r].value != edges[r - 1].value) ++idx;
                edge_value_idx[r] = idx;
            }
        }

        // Edge rank lookup.
        std::vector<std::uint32_t> rank_of(n * n, 0);
        for (std::size_t r = 0; r < n_edges; ++r) {
            rank_of[edges[r].u * n + edges[r].v] = static_cast<std::uint32_t>(r);
            rank_of[edges[r].v * n + edges[r].u] = static_cast<std::uint32_t>(r);
        }

        // Each triangle packs into one word: (value index, i, j, k) with
        // 11 bits per vertex (cap is 2000) so ascending word order is
        // exactly (filtration value, lexicographic vertex tuple).
        static_assert(sizeof(std::size_t) >= 8);
        std::vector<std::uint64_t> triangles;
        triangles.reserve(n * (n - 1) * (n - 2) / 6);
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i + 1; j < n; ++j) {
                const std::uint32_t rij = rank_of[i * n + j];
                for (std::uint32_t k = j + 1; k < n; ++k) {
                    const std::uint32_t rmax =
                        std::max(rij, std::max(rank_of[i * n + k], rank_of[j * n + k]));
                    const std::uint64_t key =
                        (static_cast<std::uint64_t>(edge_value_idx[rmax]) << 33) |
                        (static_cast<std::uint64_t>(i) << 22) |
                        (static_cast<std::uint64_t>(j) << 11) | k;
                    triangles.push_back(key);
                }
            }
        }
        std::sort(triangles.begin(), triangles.end());

        // Column reduction of the triangle boundary matrix over the edge
        // ranks. A column that ends on an unclaimed low pairs that edge's
        // birth with the triangle's value.
        std::vector<std::vector<std::uint32_t>> pivot_col(n_edges);
        std::vector<bool> edge_paired(n_edges, false);
        std::vector<std::uint32_t> col, scratch;
        for (const std::uint64_t key : triangles) {
            const auto i = static_cast<std::uint32_t>((key >> 22) & 0x7ff);
            const auto j = static_cast<std::uint32_t>((key >> 11) & 0x7ff);
            const auto k = static_cast<std::uint32_t>(key & 0x7ff);
            const double tri_value = unique_values[static_cast<std::size_t>(key >> 33)];

            col = {rank_of[i * n + j], rank_of[i * n + k], rank_of[j * n + k]};
            std::sort(col.begin(), col.end());
            while (!col.empty()) {
                const std::uint32_t low = col.back();
                if (pivot_col[low].empty()) {
                    pairs.push_back({1, edges[low].value, tri_value});
                    edge_paired[low] = true;
                    pivot_col[low] = std::move(col);
                    col.clear();
                    break;
                }
                xor_into(col, pivot_col[low], scratch);
            }
        }

        // A positive edge no triangle ever claimed would be an essential
        // loop; cannot happen for finite input (the final complex is the
        // full 2-skeleton) but is reported rather than dropped.
        for (std::size_t r = 0; r < n_edges; ++r)
            if (edge_positive[r] && !edge_paired[r]) pairs.push_back({1, edges[r].value, kInf});
    }

    return PersistenceDiagram(std::move(pairs));
}

PersistenceDiagram rips_persistence(const DistanceMatrix& d, const RipsOptions& options) {
    return rips_persistence(d.values, options);
}

double max_lifetime(const PersistenceDiagram& diagram, int dimension) {
    double best = 0.0;
    for (const auto& p : diagram.pairs())
        if (p.dimension == dimension && !p.essential()) best = std::max(best, p.lifetime());
    return best;
}

std::size_t count_pairs(const PersistenceDiagram& diagram, int dimension) {
    return diagram.positive_pairs(dimension).size();
}

std::size_t significant_pairs(const PersistenceDiagram& diagram, int dimension,
                              double fraction) {
    const double max = max_lifetime(diagram, dimension);
    if (max <= 0.0) return 0;
    std::size_t count = 0;
    for (const auto& p : diagram.pairs())
        if (p.dimension == dimension && !p.essential() && p.lifetime() > fraction * max) ++count;
    return count;
}

} // namespace opnph
