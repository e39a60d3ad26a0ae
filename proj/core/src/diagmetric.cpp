#include "opnph/diagmetric.hpp"

#include "opnph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace opnph {

namespace {

struct Point {
    double birth, death;
    double half_pers() const { return 0.5 * (death - birth); }
};

double linf(const Point& a, const Point& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Zero-persistence points sit on the diagonal and never change the distance;
// dropping them keeps the matching small.
std::vector<Point> off_diagonal(std::span<const PersistencePair> pairs) {
    std::vector<Point> pts;
    for (const auto& p : pairs) {
        if (p.essential())
            throw InvalidInputError(
                "bottleneck: diagram contains an infinite death; restrict to finite pairs");
        if (p.death > p.birth) pts.push_back({p.birth, p.death});
    }
    return pts;
}

// Hopcroft-Karp maximum matching on an explicit bipartite adjacency.
class BipartiteMatcher {
public:
    BipartiteMatcher(std::size_t n_left, std::size_t n_right)
        : n_left_(n_left), n_right_(n_right), adj_(n_left) {}

    void add_edge(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

    std::size_t max_matching() {
        match_left_.assign(n_left_, kNone);
        match_right_.assign(n_right_, kNone);
        std::size_t matched = 0;
        bool progress = true;
        while (progress) {
            progress = false;
            if (!bfs_layers()) break;
            for (std::size_t l = 0; l < n_left_; ++l) {
                if (match_left_[l] == kNone && try_augment(l)) {
                    ++matched;
                    progress = true;
                }
            }
        }
        return matched;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    bool bfs_layers() {
        layer_.assign(n_left_, kNone);
        std::vector<std::size_t> queue;
        for (std::size_t l = 0; l < n_left_; ++l) {
            if (match_left_[l] == kNone) {
                layer_[l] = 0;
                queue.push_back(l);
            }
        }
        bool reachable_free = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t l = queue[head];
            for (std::size_t r : adj_[l]) {
                const std::size_t next = match_right_[r];
                if (next == kNone) {
                    reachable_free = true;
                } else if (layer_[next] == kNone) {
                    layer_[next] = layer_[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        return reachable_free;
    }

    bool try_augment(std::size_t l) {
        for (std::size_t r : adj_[l]) {
            const std::size_t next = match_right_[r];
            if (next == kNone || (layer_[next] == layer_[l] + 1 && try_augment(next))) {
                match_left_[l] = r;
                match_right_[r] = l;
                return true;
            }
        }
        layer_[l] = kNone;
        return false;
    }

    std::size_t n_left_, n_right_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_left_, match_right_;
    std::vector<std::size_t> layer_;
};

// Feasibility at threshold lambda: every point with half-persistence above
// lambda must match across at L-inf cost <= lambda; everything else can fall
// to the diagonal. By the Mendelsohn-Dulmage theorem it is enough that each
// side's mandatory set can be covered separately.
bool side_coverable(const std::vector<Point>& must, const std::vector<Point>& other,
                    double lambda) {
    std::vector<std::size_t> mandatory;
    for (std::size_t i = 0; i < must.size(); ++i)
        if (must[i].half_pers() > lambda) mandatory.push_back(i);
    if (mandatory.empty()) return true;
    if (mandatory.size() > other.size()) return false;

    BipartiteMatcher matcher(mandatory.size(), other.size());
    for (std::size_t li = 0; li < mandatory.size(); ++li)
        for (std::size_t r = 0; r < other.size(); ++r)
            if (linf(must[mandatory[li]], other[r]) <= lambda) matcher.add_edge(li, r);
    return matcher.max_matching() == mandatory.size();
}

bool feasible(const std::vector<Point>& a, const std::vector<Point>& b, double lambda) {
    return side_coverable(a, b, lambda) && side_coverable(b, a, lambda);
}

} // namespace

double bottleneck(std::span<const PersistencePair> a, std::span<const PersistencePair> b) {
    const std::vector<Point> pa = off_diagonal(a);
    const std::vector<Point> pb = off_diagonal(b);
    if (pa.empty() && pb.empty()) return 0.0;

    // The optimum is attained at a pairwise L-inf cost or a half-persistence.
    std::vector<double> candidates{0.0};
    for (const auto& p : pa) candidates.push_back(p.half_pers());
    for (const auto& p : pb) candidates.push_back(p.half_pers());
    for (const auto& x : pa)
        for (const auto& y : pb) candidates.push_back(linf(x, y));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (feasible(pa, pb, candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return candidates[lo];
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dimension) {
    const auto fa = a.finite_pairs(dimension);
    const auto fb = b.finite_pairs(dimension);
    return bottleneck(std::span<const PersistencePair>(fa),
                      std::span<const PersistencePair>(fb));
}

double normalized_bottleneck(const PersistenceDiagram& reference,
                             const PersistenceDiagram& other, int dimension) {
    double total_pers = 0.0;
    for (const auto& p : reference.finite_pairs(dimension)) total_pers += p.lifetime();
    if (!(total_pers > 0.0))
        throw DegenerateError("normalized_bottleneck: reference has zero total persistence");
    return bottleneck(reference, other, dimension) / (0.5 * total_pers);
}

DiagramDistanceMatrix pairwise_bottleneck(std::span<const PersistenceDiagram> diagrams,
                                          std::span<const DynamicState> labels,
                                          int dimension) {
    if (diagrams.size() < 2)
        throw InvalidInputError("pairwise_bottleneck: need at least 2 diagrams");
    if (!labels.empty() && labels.size() != diagrams.size())
        throw LabelError("pairwise_bottleneck: label count mismatch");

    DiagramDistanceMatrix out;
    out.labels.assign(labels.begin(), labels.end());
    out.values = Matrix(diagrams.size(), diagrams.size());
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
        for (std::size_t j = i + 1; j < diagrams.size(); ++j) {
            double dist = 0.0;
            try {
                dist = bottleneck(diagrams[i], diagrams[j], dimension);
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << "pairwise_bottleneck: diagrams (" << i << ", " << j
                    << "): " << e.what();
                throw InvalidInputError(msg.str());
            }
            out.values(i, j) = dist;
            out.values(j, i) = dist;
        }
    }
    return out;
}

} // namespace opnph
