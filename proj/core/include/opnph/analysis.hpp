#pragma once

#include "opnph/diagmetric.hpp"
#include "opnph/matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace opnph {

/// Low-dimensional point configuration produced by metric MDS.
struct Embedding {
    std::vector<std::vector<double>> points; // one row per input object
    double stress = 0.0;                     // sum_{i != j} (delta_ij - ||xi-xj||)^2
    std::uint64_t seed = 0;
    std::vector<double> stress_history; // per-iteration stress of the selected restart
};

struct MdsOptions {
    int restarts = 4;
    int max_iterations = 300;
    double relative_tolerance = 1e-3;
};

/// SMACOF stress majorization from random starts. Restart initializations are
/// streamed from the master seed through splitmix64, the lowest-stress restart
/// wins (ties by restart index), so the result is a pure function of
/// (matrix, dims, seed). An all-zero matrix collapses every point to the
/// origin with zero stress.
Embedding mds_embed(const Matrix& dissimilarities, int dims = 2, std::uint64_t seed = 0,
                    const MdsOptions& options = {});
Embedding mds_embed(const DiagramDistanceMatrix& d, int dims = 2, std::uint64_t seed = 0,
                    const MdsOptions& options = {});

/// Soft-margin RBF kernel classifier, trained by sequential minimal
/// optimization on the dual.
struct SvmModel {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coefs; // alpha_i * y_i per support vector
    double bias = 0.0;
    double gamma = 1.0;
    double C = 1.0;

    double decision(std::span<const double> x) const;
    int predict(std::span<const double> x) const; // +1 / -1
};

/// Labels are +1/-1; gamma = nullopt means 1 / (n_features * mean per-feature
/// variance), i.e. the reciprocal covariance trace, so the kernel is rigid-
/// motion invariant. Throws LabelError unless both classes are present.
SvmModel svm_train(const std::vector<std::vector<double>>& points,
                   const std::vector<int>& labels, double C = 1.0,
                   std::optional<double> gamma = std::nullopt);

double training_accuracy(const SvmModel& model, const std::vector<std::vector<double>>& points,
                         const std::vector<int>& labels);

struct AccuracyStats {
    double mean = 0.0;
    double stddev = 0.0;
};

/// For each seed: MDS to 2D, fit the SVM (C = 1, auto gamma) on the embedded
/// points against the periodic/chaotic tags, and score on the training set.
/// Returns mean and standard deviation across seeds.
AccuracyStats separation_accuracy(const DiagramDistanceMatrix& d,
                                  std::span<const std::uint64_t> seeds);

} // namespace opnph
