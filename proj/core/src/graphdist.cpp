#include "opnph/graphdist.hpp"

#include "opnph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <sstream>

namespace opnph {

std::string to_string(DistanceMethod m) {
    switch (m) {
    case DistanceMethod::supd: return "supd";
    case DistanceMethod::swpd: return "swpd";
    case DistanceMethod::wspd: return "wspd";
    case DistanceMethod::dd: return "dd";
    }
    return "?";
}

DistanceMethod parse_method(const std::string& s) {
    for (DistanceMethod m : kAllMethods)
        if (s == to_string(m)) return m;
    throw InvalidInputError("unknown distance method '" + s + "' (expected supd|swpd|wspd|dd)");
}

namespace {

std::vector<std::vector<std::size_t>> adjacency_lists(const WeightedNetwork& net) {
    const std::size_t n = net.vertex_count();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && net.adjacency(i, j) > 0.0) adj[i].push_back(j);
    return adj;
}

void require_connected(const WeightedNetwork& net, const char* op) {
    auto comps = connected_components(net);
    if (comps.size() <= 1) return;
    std::ostringstream msg;
    msg << op << ": network is disconnected (" << comps.size() << " components:";
    for (const auto& c : comps) {
        msg << " {";
        for (std::size_t k = 0; k < std::min<std::size_t>(c.size(), 8); ++k) {
            if (k) msg << ",";
            msg << c[k];
        }
        if (c.size() > 8) msg << ",...";
        msg << "}";
    }
    msg << ")";
    throw ConnectivityError(msg.str());
}

std::vector<int> bfs_hops(const std::vector<std::vector<std::size_t>>& adj, std::size_t source) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : adj[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

// Dijkstra over inverse-weight costs from one source. Equal-cost paths can
// disagree on hop count and weight sum, so ties (relative 1e-12) resolve by
// fewer hops, then smaller weight sum, then the lexicographically smaller
// vertex sequence. The first two keys are direction-independent, which keeps
// the resulting distance matrices symmetric; the last pins down the path
// itself. Returns per-vertex (hop count, weight sum) of the chosen path.
struct InversePaths {
    std::vector<int> hops;
    std::vector<double> weight_sum;
};

InversePaths dijkstra_inverse(const WeightedNetwork& net,
                              const std::vector<std::vector<std::size_t>>& adj,
                              std::size_t source) {
    const std::size_t n = net.vertex_count();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(n, inf);
    std::vector<int> hops(n, 0);
    std::vector<double> wsum(n, 0.0);
    std::vector<std::size_t> parent(n, SIZE_MAX);
    std::vector<bool> settled(n, false);

    auto path_of = [&](std::size_t v) {
        std::vector<std::size_t> path;
        for (std::size_t u = v; u != SIZE_MAX; u = parent[u]) path.push_back(u);
        std::reverse(path.begin(), path.end());
        return path;
    };
    auto candidate_is_smaller = [&](std::size_t u, std::size_t v) {
        auto cand = path_of(u);
        cand.push_back(v);
        const auto incumbent = path_of(v);
        return std::lexicographical_compare(cand.begin(), cand.end(), incumbent.begin(),
                                            incumbent.end());
    };

    using Item = std::pair<double, std::size_t>; // (cost, vertex)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    cost[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [c, u] = heap.top();
        heap.pop();
        if (settled[u] || c > cost[u]) continue;
        settled[u] = true;
        for (std::size_t v : adj[u]) {
            const double w = net.adjacency(u, v);
            if (!(w > 0.0)) throw InvalidInputError("shortest path: nonpositive edge weight");
            const double cand = cost[u] + 1.0 / w;
            const double eps = 1e-12 * (1.0 + std::abs(cost[v] == inf ? cand : cost[v]));
            if (cand < cost[v] - eps) {
                cost[v] = cand;
                hops[v] = hops[u] + 1;
                wsum[v] = wsum[u] + w;
                parent[v] = u;
                heap.emplace(cand, v);
            } else if (cand <= cost[v] + eps && !settled[v]) {
                const int cand_hops = hops[u] + 1;
                const double cand_wsum = wsum[u] + w;
                if (cand_hops < hops[v] ||
                    (cand_hops == hops[v] && cand_wsum < wsum[v]) ||
                    (cand_hops == hops[v] && cand_wsum == wsum[v] &&
                     candidate_is_smaller(u, v))) {
                    hops[v] = cand_hops;
                    wsum[v] = cand_wsum;
                    parent[v] = u;
                }
            }
        }
    }

    InversePaths out;
    out.hops = std::move(hops);
    out.weight_sum = std::move(wsum);
    return out;
}

} // namespace

std::vector<std::vector<std::size_t>> connected_components(const WeightedNetwork& net) {
    const auto adj = adjacency_lists(net);
    const std::size_t n = net.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        comps.emplace_back();
        std::deque<std::size_t> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            comps.back().push_back(u);
            for (std::size_t v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

bool is_connected(const WeightedNetwork& net) {
    return connected_components(net).size() <= 1;
}

int unweighted_diameter(const WeightedNetwork& net) {
    require_connected(net, "unweighted_diameter");
    const auto adj = adjacency_lists(net);
    int diameter = 0;
    for (std::size_t s = 0; s < net.vertex_count(); ++s) {
        for (int d : bfs_hops(adj, s)) diameter = std::max(diameter, d);
    }
    return diameter;
}

int default_t(const WeightedNetwork& net) {
    return 2 * unweighted_diameter(net);
}

DistanceMatrix shortest_unweighted_path(const WeightedNetwork& net) {
    require_connected(net, "shortest_unweighted_path");
    const auto adj = adjacency_lists(net);
    const std::size_t n = net.vertex_count();
    DistanceMatrix d;
    d.method = DistanceMethod::supd;
    d.values = Matrix(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto hops = bfs_hops(adj, s);
        for (std::size_t v = 0; v < n; ++v) d.values(s, v) = static_cast<double>(hops[v]);
    }
    return d;
}

DistanceMatrix shortest_weighted_path(const WeightedNetwork& net) {
    require_connected(net, "shortest_weighted_path");
    const auto adj = adjacency_lists(net);
    const std::size_t n = net.vertex_count();
    DistanceMatrix d;
    d.method = DistanceMethod::swpd;
    d.values = Matrix(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto paths = dijkstra_inverse(net, adj, s);
        for (std::size_t v = 0; v < n; ++v) d.values(s, v) = static_cast<double>(paths.hops[v]);
    }
    return d;
}

DistanceMatrix weighted_shortest_path(const WeightedNetwork& net) {
    require_connected(net, "weighted_shortest_path");
    const auto adj = adjacency_lists(net);
    const std::size_t n = net.vertex_count();
    DistanceMatrix d;
    d.method = DistanceMethod::wspd;
    d.values = Matrix(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto paths = dijkstra_inverse(net, adj, s);
        for (std::size_t v = 0; v < n; ++v) d.values(s, v) = paths.weight_sum[v];
    }
    return d;
}

TransitionMatrix transition_matrix(const WeightedNetwork& net, bool lazy) {
    const std::size_t n = net.vertex_count();
    TransitionMatrix p;
    p.lazy = lazy;
    p.values = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) row_sum += net.adjacency(i, j);
        if (row_sum <= 0.0) {
            std::ostringstream msg;
            msg << "transition_matrix: vertex " << i << " is isolated (zero row)";
            throw DegenerateError(msg.str());
        }
        for (std::size_t j = 0; j < n; ++j) p.values(i, j) = net.adjacency(i, j) / row_sum;
    }
    if (lazy) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) p.values(i, j) *= 0.5;
            p.values(i, i) += 0.5;
        }
    }
    return p;
}

DistanceMatrix diffusion_distance(const WeightedNetwork& net, int t) {
    if (t < 1) throw InvalidInputError("diffusion_distance: t must be >= 1");
    require_connected(net, "diffusion_distance");

    const std::size_t n = net.vertex_count();
    const TransitionMatrix lazy = transition_matrix(net, true);
    const Matrix pt = matrix_power(lazy.values, t);

    std::vector<double> inv_degree(n);
    for (std::size_t v = 0; v < n; ++v)
        inv_degree[v] = 1.0 / static_cast<double>(net.degree(v));

    DistanceMatrix d;
    d.method = DistanceMethod::dd;
    d.t_steps = t;
    d.values = Matrix(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            double sum = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                const double diff = pt(a, c) - pt(b, c);
                sum += inv_degree[c] * diff * diff;
            }
            const double dist = std::sqrt(sum);
            d.values(a, b) = dist;
            d.values(b, a) = dist;
        }
    }
    return d;
}

DistanceMatrix normalize(const DistanceMatrix& d) {
    const double max = max_entry(d.values);
    if (!(max > 0.0)) throw DegenerateError("normalize: all-zero distance matrix");
    DistanceMatrix out = d;
    for (std::size_t i = 0; i < out.values.rows(); ++i)
        for (std::size_t j = 0; j < out.values.cols(); ++j) out.values(i, j) /= max;
    return out;
}

DistanceMatrix compute_distance(const WeightedNetwork& net, DistanceMethod method,
                                std::optional<int> t) {
    switch (method) {
    case DistanceMethod::supd: return shortest_unweighted_path(net);
    case DistanceMethod::swpd: return shortest_weighted_path(net);
    case DistanceMethod::wspd: return weighted_shortest_path(net);
    case DistanceMethod::dd: return diffusion_distance(net, t ? *t : default_t(net));
    }
    throw InvalidInputError("compute_distance: bad method");
}

} // namespace opnph
