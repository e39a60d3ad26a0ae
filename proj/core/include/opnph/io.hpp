#pragma once

#include "opnph/analysis.hpp"
#include "opnph/diagmetric.hpp"
#include "opnph/dynsys.hpp"
#include "opnph/graphdist.hpp"
#include "opnph/opn.hpp"
#include "opnph/persistence.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace opnph::io {

/// All writers land atomically: content goes to a sibling temp file that is
/// renamed over the target.
void write_text(const std::filesystem::path& path, const std::string& content);

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

// signal: "time,value" rows, one per sample.
void write_signal_csv(const std::filesystem::path& path, const Signal& signal);
Signal read_signal_csv(const std::filesystem::path& path);

// permutation sequence: "index,permutation" with "0-2-1" style symbols.
void write_sequence_csv(const std::filesystem::path& path, const PermutationSequence& seq);

// network: edge list "u,v,weight" plus a vertex table "index,permutation".
void write_edge_list_csv(const std::filesystem::path& path, const WeightedNetwork& net);
void write_vertex_table_csv(const std::filesystem::path& path, const WeightedNetwork& net);
WeightedNetwork read_edge_list_csv(const std::filesystem::path& path);

// square matrix with a header row of labels.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& labels);
Matrix read_matrix_csv(const std::filesystem::path& path);

// diagram: "dimension,birth,death" with "inf" for essential classes.
void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& diagram);
PersistenceDiagram read_diagram_csv(const std::filesystem::path& path);

// embedding: "label,x,y".
void write_embedding_csv(const std::filesystem::path& path, const Embedding& embedding,
                         const std::vector<std::string>& labels);

// accuracy report: {"method": ..., "normalized": ..., "mean": ..., "std": ...,
// "seeds": [...]}.
void write_accuracy_json(const std::filesystem::path& path, const std::string& method,
                         bool normalized, const AccuracyStats& stats,
                         const std::vector<std::uint64_t>& seeds);

// registry dump: name, dimension, parameters, initial condition, tau, fs and
// labels of every registered system.
void write_registry_json(const std::filesystem::path& path);

} // namespace opnph::io
