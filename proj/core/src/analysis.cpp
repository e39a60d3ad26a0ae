#include "opnph/analysis.hpp"

#include "opnph/errors.hpp"
#include "opnph/rng.hpp"

#include <algorithm>
#include <cmath>

namespace opnph {

namespace {

void validate_dissimilarities(const Matrix& d) {
    if (d.rows() != d.cols() || d.rows() == 0)
        throw InvalidInputError("mds_embed: matrix must be square and nonempty");
    for (std::size_t i = 0; i < d.rows(); ++i) {
        if (d(i, i) != 0.0) throw InvalidInputError("mds_embed: nonzero diagonal");
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (!std::isfinite(d(i, j)) || d(i, j) < 0.0)
                throw InvalidInputError("mds_embed: entries must be finite and >= 0");
            if (d(i, j) != d(j, i)) throw InvalidInputError("mds_embed: matrix not symmetric");
        }
    }
}

double config_stress(const Matrix& delta, const std::vector<std::vector<double>>& x) {
    const std::size_t n = delta.rows();
    double stress = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double dist = 0.0;
            for (std::size_t k = 0; k < x[i].size(); ++k) {
                const double diff = x[i][k] - x[j][k];
                dist += diff * diff;
            }
            const double r = delta(i, j) - std::sqrt(dist);
            stress += r * r;
        }
    }
    return stress;
}

struct SmacofRun {
    std::vector<std::vector<double>> points;
    double stress;
    std::vector<double> history;
};

SmacofRun smacof_once(const Matrix& delta, int dims, std::uint64_t init_seed,
                      const MdsOptions& options) {
    const std::size_t n = delta.rows();
    const auto d = static_cast<std::size_t>(dims);
    SplitMix64 rng(init_seed);
    std::vector<std::vector<double>> x(n, std::vector<double>(d));
    for (auto& row : x)
        for (double& v : row) v = rng.uniform01();

    SmacofRun run;
    run.stress = config_stress(delta, x);
    run.history.push_back(run.stress);

    std::vector<std::vector<double>> next(n, std::vector<double>(d));
    Matrix dist(n, n);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    const double diff = x[i][k] - x[j][k];
                    s += diff * diff;
                }
                const double v = std::sqrt(s);
                dist(i, j) = v;
                dist(j, i) = v;
            }
        }
        // Guttman transform: X <- B(X) X / n, B_ij = -delta_ij / d_ij (i != j,
        // zero where d_ij = 0), B_ii = -sum_j B_ij.
        for (std::size_t i = 0; i < n; ++i) {
            double b_ii = 0.0;
            for (std::size_t k = 0; k < d; ++k) next[i][k] = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || dist(i, j) == 0.0) continue;
                const double b_ij = delta(i, j) / dist(i, j);
                b_ii += b_ij;
                for (std::size_t k = 0; k < d; ++k) next[i][k] += b_ij * x[j][k];
            }
            for (std::size_t k = 0; k < d; ++k)
                next[i][k] = (b_ii * x[i][k] - next[i][k]) / static_cast<double>(n);
        }
        x.swap(next);

        const double stress = config_stress(delta, x);
        run.history.push_back(stress);
        const double prev = run.stress;
        run.stress = stress;
        if (prev > 0.0 && (prev - stress) / prev < options.relative_tolerance) break;
        if (prev == 0.0) break;
    }
    run.points = std::move(x);
    return run;
}

} // namespace

Embedding mds_embed(const Matrix& dissimilarities, int dims, std::uint64_t seed,
                    const MdsOptions& options) {
    if (dims < 1) throw InvalidInputError("mds_embed: dims must be >= 1");
    if (options.restarts < 1) throw InvalidInputError("mds_embed: need at least one restart");
    validate_dissimilarities(dissimilarities);

    SplitMix64 master(seed);
    SmacofRun best;
    bool have_best = false;
    for (int r = 0; r < options.restarts; ++r) {
        const std::uint64_t init_seed = master.next();
        SmacofRun run = smacof_once(dissimilarities, dims, init_seed, options);
        if (!have_best || run.stress < best.stress) {
            best = std::move(run);
            have_best = true;
        }
    }

    Embedding out;
    out.points = std::move(best.points);
    out.stress = best.stress;
    out.seed = seed;
    out.stress_history = std::move(best.history);
    return out;
}

Embedding mds_embed(const DiagramDistanceMatrix& d, int dims, std::uint64_t seed,
                    const MdsOptions& options) {
    return mds_embed(d.values, dims, seed, options);
}

// ---------------------------------------------------------------------------
// RBF SVM via SMO (Platt 1998, deterministic index-order scans).
// ---------------------------------------------------------------------------

namespace {

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return std::exp(-gamma * s);
}

constexpr double kKktTol = 1e-3;
constexpr double kAlphaEps = 1e-12;

struct SmoState {
    const std::vector<std::vector<double>>& x;
    const std::vector<int>& y;
    double C;
    double gamma;
    Matrix kernel;
    std::vector<double> alpha;
    double b = 0.0;

    SmoState(const std::vector<std::vector<double>>& x, const std::vector<int>& y, double C,
             double gamma)
        : x(x), y(y), C(C), gamma(gamma), kernel(x.size(), x.size()), alpha(x.size(), 0.0) {
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j) kernel(i, j) = rbf(x[i], x[j], gamma);
    }

    double decision(std::size_t i) const {
        double f = b;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (alpha[j] > 0.0) f += alpha[j] * y[j] * kernel(j, i);
        return f;
    }
    double error(std::size_t i) const { return decision(i) - y[i]; }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double a1_old = alpha[i1], a2_old = alpha[i2];
        const int y1 = y[i1], y2 = y[i2];
        const double e1 = error(i1), e2 = error(i2);
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2_old - a1_old);
            hi = std::min(C, C + a2_old - a1_old);
        } else {
            lo = std::max(0.0, a1_old + a2_old - C);
            hi = std::min(C, a1_old + a2_old);
        }
        if (lo >= hi) return false;

        const double k11 = kernel(i1, i1), k12 = kernel(i1, i2), k22 = kernel(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double a2;
        if (eta > 0.0) {
            a2 = a2_old + y2 * (e1 - e2) / eta;
            a2 = std::clamp(a2, lo, hi);
        } else {
            // Flat direction (duplicate points): evaluate the objective at
            // both clip ends. The decision function here carries +b, so the
            // reference pseudocode's (E + b) term flips sign.
            const double f1 = y1 * (e1 - b) - a1_old * k11 - s * a2_old * k12;
            const double f2 = y2 * (e2 - b) - s * a1_old * k12 - a2_old * k22;
            const double l1 = a1_old + s * (a2_old - lo);
            const double h1 = a1_old + s * (a2_old - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                                  s * lo * l1 * k12;
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                                  s * hi * h1 * k12;
            if (obj_lo < obj_hi - kAlphaEps)
                a2 = lo;
            else if (obj_lo > obj_hi + kAlphaEps)
                a2 = hi;
            else
                a2 = a2_old;
        }
        if (std::abs(a2 - a2_old) < kAlphaEps * (a2 + a2_old + kAlphaEps)) return false;

        const double a1 = a1_old + s * (a2_old - a2);

        const double b1 = b - e1 - y1 * (a1 - a1_old) * k11 - y2 * (a2 - a2_old) * k12;
        const double b2 = b - e2 - y1 * (a1 - a1_old) * k12 - y2 * (a2 - a2_old) * k22;
        if (a1 > 0.0 && a1 < C)
            b = b1;
        else if (a2 > 0.0 && a2 < C)
            b = b2;
        else
            b = 0.5 * (b1 + b2);

        alpha[i1] = a1;
        alpha[i2] = a2;
        return true;
    }

    bool examine(std::size_t i2) {
        const double e2 = error(i2);
        const double r2 = e2 * y[i2];
        const bool violates =
            (r2 < -kKktTol && alpha[i2] < C) || (r2 > kKktTol && alpha[i2] > 0.0);
        if (!violates) return false;

        // Second-choice heuristic: the non-bound point with the largest
        // |E1 - E2|, then every non-bound point, then everything.
        std::size_t best = x.size();
        double best_gap = -1.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i == i2 || alpha[i] <= 0.0 || alpha[i] >= C) continue;
            const double gap = std::abs(error(i) - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < x.size() && take_step(best, i2)) return true;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i == i2 || alpha[i] <= 0.0 || alpha[i] >= C) continue;
            if (take_step(i, i2)) return true;
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i == i2) continue;
            if (take_step(i, i2)) return true;
        }
        return false;
    }

    // Alternate full passes with non-bound passes until a full pass changes
    // nothing (Platt's outer loop).
    void solve() {
        std::size_t changed = 0;
        bool examine_all = true;
        int guard = 0;
        const int max_rounds = 10000;
        while ((changed > 0 || examine_all) && guard++ < max_rounds) {
            changed = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (!examine_all && (alpha[i] <= 0.0 || alpha[i] >= C)) continue;
                if (examine(i)) ++changed;
            }
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
        }
    }
};

} // namespace

double SvmModel::decision(std::span<const double> x) const {
    double f = bias;
    for (std::size_t i = 0; i < support_vectors.size(); ++i)
        f += dual_coefs[i] * rbf(support_vectors[i], x, gamma);
    return f;
}

int SvmModel::predict(std::span<const double> x) const { return decision(x) >= 0.0 ? 1 : -1; }

SvmModel svm_train(const std::vector<std::vector<double>>& points,
                   const std::vector<int>& labels, double C,
                   std::optional<double> gamma) {
    if (points.empty() || points.size() != labels.size())
        throw InvalidInputError("svm_train: points/labels size mismatch");
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == 1)
            has_pos = true;
        else if (y == -1)
            has_neg = true;
        else
            throw LabelError("svm_train: labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw LabelError("svm_train: both classes must be present");
    if (!(C > 0.0)) throw InvalidInputError("svm_train: C must be > 0");

    double g;
    if (gamma) {
        g = *gamma;
        if (!(g > 0.0)) throw InvalidInputError("svm_train: gamma must be > 0");
    } else {
        // 1 / (n_features * mean per-feature variance). The mean per-feature
        // variance is the covariance trace over n_features, so the kernel is
        // unchanged under rigid motions of the point set.
        const std::size_t n_features = points.front().size();
        const auto n_points = static_cast<double>(points.size());
        double trace = 0.0;
        for (std::size_t k = 0; k < n_features; ++k) {
            double mean = 0.0;
            for (const auto& p : points) mean += p[k];
            mean /= n_points;
            double ss = 0.0;
            for (const auto& p : points) ss += (p[k] - mean) * (p[k] - mean);
            trace += ss / n_points;
        }
        g = trace > 0.0 ? 1.0 / trace : 1.0;
    }

    SmoState smo(points, labels, C, g);
    smo.solve();

    SvmModel model;
    model.gamma = g;
    model.C = C;
    model.bias = smo.b;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (smo.alpha[i] > 0.0) {
            model.support_vectors.push_back(points[i]);
            model.dual_coefs.push_back(smo.alpha[i] * labels[i]);
        }
    }
    return model;
}

double training_accuracy(const SvmModel& model, const std::vector<std::vector<double>>& points,
                         const std::vector<int>& labels) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (model.predict(points[i]) == labels[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(points.size());
}

AccuracyStats separation_accuracy(const DiagramDistanceMatrix& d,
                                  std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw InvalidInputError("separation_accuracy: no seeds given");
    if (d.labels.size() != d.values.rows())
        throw LabelError("separation_accuracy: every row needs a dynamic-state label");

    std::vector<int> y;
    std::size_t periodic = 0, chaotic = 0;
    for (DynamicState s : d.labels) {
        y.push_back(s == DynamicState::periodic ? 1 : -1);
        (s == DynamicState::periodic ? periodic : chaotic) += 1;
    }
    if (periodic < 2 || chaotic < 2)
        throw LabelError("separation_accuracy: need at least 2 diagrams per class");

    std::vector<double> accuracies;
    accuracies.reserve(seeds.size());
    for (std::uint64_t seed : seeds) {
        const Embedding em = mds_embed(d.values, 2, seed);
        const SvmModel model = svm_train(em.points, y, 1.0, std::nullopt);
        accuracies.push_back(training_accuracy(model, em.points, y));
    }

    AccuracyStats stats;
    for (double a : accuracies) stats.mean += a;
    stats.mean /= static_cast<double>(accuracies.size());
    double ss = 0.0;
    for (double a : accuracies) ss += (a - stats.mean) * (a - stats.mean);
    stats.stddev = std::sqrt(ss / static_cast<double>(accuracies.size()));
    return stats;
}

} // namespace opnph
