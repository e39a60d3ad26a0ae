#pragma once

#include "opnph/matrix.hpp"
#include "opnph/persistence.hpp"
#include "opnph/signal.hpp"

#include <span>
#include <string>
#include <vector>

namespace opnph {

/// Symmetric matrix of bottleneck distances between diagrams, with the
/// dynamic-state tag of each row carried alongside.
struct DiagramDistanceMatrix {
    Matrix values;
    std::vector<DynamicState> labels;
    std::vector<std::string> names; // row labels for export
};

/// Exact bottleneck distance between two finite persistence diagrams given as
/// (birth, death) pairs: the minimum over partial matchings of the largest of
/// the matched L-inf distances and the half-persistences of unmatched points.
/// Computed by binary search over the candidate value set with bipartite
/// matching feasibility tests. Throws InvalidInputError on infinite deaths;
/// restrict to finite pairs first.
double bottleneck(std::span<const PersistencePair> a, std::span<const PersistencePair> b);

/// Bottleneck over the finite pairs of one dimension (default D1).
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dimension = 1);

/// bottleneck / (half the total persistence of the reference diagram).
/// Throws DegenerateError when the reference has zero total persistence.
double normalized_bottleneck(const PersistenceDiagram& reference,
                             const PersistenceDiagram& other, int dimension = 1);

DiagramDistanceMatrix pairwise_bottleneck(std::span<const PersistenceDiagram> diagrams,
                                          std::span<const DynamicState> labels,
                                          int dimension = 1);

} // namespace opnph
