#include "opnph/opn.hpp"

#include "opnph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace opnph {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (int v : order_) {
        if (v < 0 || v >= static_cast<int>(order_.size()) || seen[static_cast<std::size_t>(v)])
            throw InvalidInputError("Permutation: order is not a bijection on {0..n-1}");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

std::string Permutation::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(order_[i]);
    }
    return s;
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
    // FNV-1a over the index sequence.
    std::size_t h = 1469598103934665603ULL;
    for (int v : p.order()) {
        h ^= static_cast<std::size_t>(v);
        h *= 1099511628211ULL;
    }
    return h;
}

Permutation permutation_of(std::span<const double> window) {
    if (window.size() < 2) throw InvalidInputError("permutation_of: window length must be >= 2");
    for (double v : window)
        if (!std::isfinite(v)) throw InvalidInputError("permutation_of: non-finite window entry");

    std::vector<int> order(window.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return window[static_cast<std::size_t>(a)] < window[static_cast<std::size_t>(b)];
    });
    return Permutation(std::move(order));
}

PermutationSequence embed(const Signal& signal, int n, int tau) {
    if (n < 2) throw InvalidInputError("embed: embedding dimension must be >= 2");
    if (tau < 1) throw InvalidInputError("embed: delay must be >= 1");
    const std::size_t span = static_cast<std::size_t>(tau) * static_cast<std::size_t>(n - 1);
    if (signal.samples.size() <= span)
        throw LengthError("embed: signal length must exceed tau*(n-1)");

    PermutationSequence seq;
    seq.n = n;
    seq.tau = tau;
    const std::size_t count = signal.samples.size() - span;
    seq.symbols.reserve(count);
    std::vector<double> window(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < count; ++i) {
        for (int j = 0; j < n; ++j)
            window[static_cast<std::size_t>(j)] =
                signal.samples[i + static_cast<std::size_t>(j) * static_cast<std::size_t>(tau)];
        seq.symbols.push_back(permutation_of(window));
    }
    return seq;
}

int WeightedNetwork::degree(std::size_t v) const {
    int d = 0;
    for (std::size_t j = 0; j < vertex_count(); ++j)
        if (adjacency(v, j) > 0.0) ++d;
    return d;
}

double WeightedNetwork::total_edge_weight() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < vertex_count(); ++i)
        for (std::size_t j = i + 1; j < vertex_count(); ++j) sum += adjacency(i, j);
    return sum;
}

std::vector<std::tuple<std::size_t, std::size_t, double>> WeightedNetwork::edges() const {
    std::vector<std::tuple<std::size_t, std::size_t, double>> out;
    for (std::size_t i = 0; i < vertex_count(); ++i)
        for (std::size_t j = i + 1; j < vertex_count(); ++j)
            if (adjacency(i, j) > 0.0) out.emplace_back(i, j, adjacency(i, j));
    return out;
}

std::vector<std::string> WeightedNetwork::vertex_labels() const {
    std::vector<std::string> labels;
    labels.reserve(vertex_count());
    if (vertices.size() == vertex_count()) {
        for (const auto& p : vertices) labels.push_back(p.to_string());
    } else {
        for (std::size_t i = 0; i < vertex_count(); ++i) labels.push_back(std::to_string(i));
    }
    return labels;
}

WeightedNetwork WeightedNetwork::cycle(std::size_t n, double weight) {
    if (n < 3) throw InvalidInputError("cycle: need at least 3 vertices");
    WeightedNetwork net;
    net.adjacency = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        net.adjacency(i, j) = weight;
        net.adjacency(j, i) = weight;
    }
    return net;
}

WeightedNetwork WeightedNetwork::from_edges(
    std::size_t n_vertices,
    std::span<const std::tuple<std::size_t, std::size_t, double>> edge_list) {
    WeightedNetwork net;
    net.adjacency = Matrix(n_vertices, n_vertices);
    for (const auto& [u, v, w] : edge_list) {
        if (u >= n_vertices || v >= n_vertices)
            throw InvalidInputError("from_edges: vertex index out of range");
        if (u == v) throw InvalidInputError("from_edges: self-loops not allowed");
        if (!(w > 0.0)) throw InvalidInputError("from_edges: weights must be positive");
        net.adjacency(u, v) += w;
        net.adjacency(v, u) += w;
    }
    return net;
}

WeightedNetwork build_network(const PermutationSequence& seq) {
    if (seq.symbols.size() < 2) throw LengthError("build_network: need at least 2 symbols");

    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    std::vector<Permutation> vertices;
    for (const auto& s : seq.symbols) {
        if (index.emplace(s, vertices.size()).second) vertices.push_back(s);
    }
    if (vertices.size() < 2)
        throw DegenerateError(
            "build_network: all symbols identical (single vertex, no edges)");

    WeightedNetwork net;
    net.adjacency = Matrix(vertices.size(), vertices.size());
    net.vertices = std::move(vertices);
    for (std::size_t i = 0; i + 1 < seq.symbols.size(); ++i) {
        const std::size_t a = index.at(seq.symbols[i]);
        const std::size_t b = index.at(seq.symbols[i + 1]);
        if (a == b) continue; // no self-loops
        net.adjacency(a, b) += 1.0;
        net.adjacency(b, a) += 1.0;
    }
    return net;
}

} // namespace opnph
