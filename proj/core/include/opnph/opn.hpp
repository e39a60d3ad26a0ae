#pragma once

#include "opnph/matrix.hpp"
#include "opnph/signal.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace opnph {

/// Ordinal pattern: the index ordering that sorts a window ascending,
/// i.e. window[order[0]] <= window[order[1]] <= ... Ties are broken by the
/// earlier index (stable argsort), since measured data may repeat values.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> order);

    int size() const { return static_cast<int>(order_.size()); }
    const std::vector<int>& order() const { return order_; }
    int operator[](int i) const { return order_[static_cast<std::size_t>(i)]; }

    /// "0-2-1" style key used in exports.
    std::string to_string() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> order_;
};

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const;
};

Permutation permutation_of(std::span<const double> window);

/// Ordinal partition symbol sequence of a delay embedding.
struct PermutationSequence {
    std::vector<Permutation> symbols;
    int n = 0;   // embedding dimension
    int tau = 0; // delay in samples
};

/// One symbol per i in [0, L - tau*(n-1)), from windows
/// (x_i, x_{i+tau}, ..., x_{i+tau(n-1)}).
PermutationSequence embed(const Signal& signal, int n, int tau);

/// Simple undirected graph with nonnegative integer edge weights stored as
/// transition counts. `vertices` carries the permutation labels when the
/// network came from a symbol sequence and is empty for synthetic graphs.
struct WeightedNetwork {
    std::vector<Permutation> vertices;
    Matrix adjacency; // symmetric, zero diagonal

    std::size_t vertex_count() const { return adjacency.rows(); }
    double weight(std::size_t a, std::size_t b) const { return adjacency(a, b); }
    /// Unweighted degree (incident edge count).
    int degree(std::size_t v) const;
    double total_edge_weight() const;
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges() const;
    /// Permutation strings when available, vertex indices otherwise.
    std::vector<std::string> vertex_labels() const;

    static WeightedNetwork cycle(std::size_t n, double weight = 1.0);
    static WeightedNetwork from_edges(
        std::size_t n_vertices,
        std::span<const std::tuple<std::size_t, std::size_t, double>> edge_list);
};

/// Vertices are the distinct permutations in order of first appearance; each
/// state-changing transition (s_i, s_{i+1}) adds 1 to the weight of the
/// undirected edge between them. Consecutive repeats contribute nothing.
/// Throws DegenerateError if every symbol is identical.
WeightedNetwork build_network(const PermutationSequence& seq);

} // namespace opnph
