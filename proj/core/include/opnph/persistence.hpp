#pragma once

#include "opnph/graphdist.hpp"
#include "opnph/matrix.hpp"

#include <cstddef>
#include <vector>

namespace opnph {

struct PersistencePair {
    int dimension = 0;
    double birth = 0.0;
    double death = 0.0; // +inf for the essential class

    double lifetime() const { return death - birth; }
    bool essential() const;
    bool operator==(const PersistencePair&) const = default;
};

/// Multiset of (birth, death) pairs per homology dimension. Zero-persistence
/// pairs (birth == death) are kept so the diagram carries the complete
/// reduction output; the accessors below filter.
class PersistenceDiagram {
public:
    PersistenceDiagram() = default;
    explicit PersistenceDiagram(std::vector<PersistencePair> pairs);

    const std::vector<PersistencePair>& pairs() const { return pairs_; }

    /// Finite pairs of one dimension (zero-persistence included).
    std::vector<PersistencePair> finite_pairs(int dimension) const;
    /// Finite pairs with death > birth.
    std::vector<PersistencePair> positive_pairs(int dimension) const;
    std::size_t essential_count(int dimension) const;

private:
    std::vector<PersistencePair> pairs_;
};

struct RipsOptions {
    int max_dim = 1;               // homology dimensions computed: 0..max_dim
    std::size_t vertex_cap = 2000; // SizeError above this
};

/// Persistent homology of the Vietoris-Rips (flag) filtration of a distance
/// matrix: vertices at 0, edge (i,j) at d(i,j), triangle at its largest edge.
/// Simplices are ordered by (filtration value, dimension, lexicographic
/// vertex tuple) and the Z2 boundary matrix is reduced in that order. The
/// single essential connected component is reported with death = +inf.
/// Cost grows with the cube of the vertex count (all triangles enter).
PersistenceDiagram rips_persistence(const Matrix& d, const RipsOptions& options = {});
PersistenceDiagram rips_persistence(const DistanceMatrix& d, const RipsOptions& options = {});

/// Largest death - birth over finite pairs of the dimension; 0 if none.
double max_lifetime(const PersistenceDiagram& diagram, int dimension);

/// Number of finite pairs with death > birth in the dimension.
std::size_t count_pairs(const PersistenceDiagram& diagram, int dimension);

/// Pairs whose persistence exceeds `fraction` of the dimension's maximum
/// persistence; the operational notion of a significant diagram point.
std::size_t significant_pairs(const PersistenceDiagram& diagram, int dimension,
                              double fraction = 0.1);

} // namespace opnph
