#pragma once

#include "opnph/matrix.hpp"
#include "opnph/opn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace opnph {

enum class DistanceMethod { supd, swpd, wspd, dd };

std::string to_string(DistanceMethod m);
DistanceMethod parse_method(const std::string& s);
inline constexpr DistanceMethod kAllMethods[] = {DistanceMethod::supd, DistanceMethod::swpd,
                                                 DistanceMethod::wspd, DistanceMethod::dd};

/// Symmetric nonnegative inter-vertex distance matrix with zero diagonal.
struct DistanceMatrix {
    Matrix values;
    DistanceMethod method = DistanceMethod::supd;
    std::optional<int> t_steps; // diffusion distance only
};

/// Row-stochastic random walk matrix of a weighted network.
struct TransitionMatrix {
    Matrix values;
    bool lazy = false;
};

std::vector<std::vector<std::size_t>> connected_components(const WeightedNetwork& net);
bool is_connected(const WeightedNetwork& net);

/// Maximum shortest unweighted path between any two vertices.
int unweighted_diameter(const WeightedNetwork& net);

/// Walk-step count used for the diffusion distance: 2 * unweighted diameter.
int default_t(const WeightedNetwork& net);

/// D(a,b) = minimum edge count over paths from a to b (weights ignored).
DistanceMatrix shortest_unweighted_path(const WeightedNetwork& net);

/// Paths chosen to minimize the summed inverse weights, so heavily used edges
/// are preferred; D(a,b) = number of edges on the chosen path.
DistanceMatrix shortest_weighted_path(const WeightedNetwork& net);

/// Same inverse-weight path selection; D(a,b) = sum of the edge weights along
/// the chosen path.
DistanceMatrix weighted_shortest_path(const WeightedNetwork& net);

/// P(i,j) = A(i,j) / sum_k A(i,k); lazy form is (I + P) / 2.
TransitionMatrix transition_matrix(const WeightedNetwork& net, bool lazy);

/// d_t(a,b) = sqrt( sum_c 1/deg(c) * (Pl^t(a,c) - Pl^t(b,c))^2 ) where Pl is
/// the lazy transition matrix raised to t by iterated multiplication and deg
/// is the unweighted vertex degree.
DistanceMatrix diffusion_distance(const WeightedNetwork& net, int t);

/// Entrywise division by the maximum entry, which becomes exactly 1.
DistanceMatrix normalize(const DistanceMatrix& d);

/// Dispatch on method; t defaults to default_t(net) for the diffusion
/// distance and is ignored otherwise.
DistanceMatrix compute_distance(const WeightedNetwork& net, DistanceMethod method,
                                std::optional<int> t = std::nullopt);

} // namespace opnph
