#include "opnph/io.hpp"

#include "opnph/errors.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace opnph::io {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    // Shortest representation that round-trips.
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidInputError("bad numeric field '" + s + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    return in;
}

} // namespace

void write_signal_csv(const fs::path& path, const Signal& signal) {
    std::ostringstream out;
    out << "time,value\n";
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        const double t = signal.fs > 0 ? static_cast<double>(i) / signal.fs : static_cast<double>(i);
        out << format_double(t) << ',' << format_double(signal.samples[i]) << '\n';
    }
    write_text(path, out.str());
}

Signal read_signal_csv(const fs::path& path) {
    auto in = open_input(path);
    std::string line;
    std::getline(in, line); // header
    Signal signal;
    double first_t = 0.0, second_t = 0.0;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) throw InvalidInputError("signal csv: expected 2 columns");
        const double t = parse_double(fields[0]);
        if (row == 0) first_t = t;
        if (row == 1) second_t = t;
        signal.samples.push_back(parse_double(fields[1]));
        ++row;
    }
    if (signal.samples.size() >= 2) signal.fs = 1.0 / (second_t - first_t);
    return signal;
}

void write_sequence_csv(const fs::path& path, const PermutationSequence& seq) {
    std::ostringstream out;
    out << "index,permutation\n";
    for (std::size_t i = 0; i < seq.symbols.size(); ++i)
        out << i << ',' << seq.symbols[i].to_string() << '\n';
    write_text(path, out.str());
}

void write_edge_list_csv(const fs::path& path, const WeightedNetwork& net) {
    std::ostringstream out;
    out << "u,v,weight\n";
    for (const auto& [u, v, w] : net.edges())
        out << u << ',' << v << ',' << format_double(w) << '\n';
    write_text(path, out.str());
}

WeightedNetwork read_edge_list_csv(const fs::path& path) {
    auto in = open_input(path);
    std::string line;
    std::getline(in, line); // header
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    std::size_t max_vertex = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) throw InvalidInputError("edge list csv: expected 3 columns");
        const auto u = static_cast<std::size_t>(std::stoull(fields[0]));
        const auto v = static_cast<std::size_t>(std::stoull(fields[1]));
        edges.emplace_back(u, v, parse_double(fields[2]));
        max_vertex = std::max({max_vertex, u, v});
    }
    if (edges.empty()) throw InvalidInputError("edge list csv: no edges");
    return WeightedNetwork::from_edges(max_vertex + 1, edges);
}

void write_vertex_table_csv(const fs::path& path, const WeightedNetwork& net) {
    std::ostringstream out;
    out << "index,permutation\n";
    const auto labels = net.vertex_labels();
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
    write_text(path, out.str());
}

void write_matrix_csv(const fs::path& path, const Matrix& m,
                      const std::vector<std::string>& labels) {
    if (!labels.empty() && labels.size() != m.cols())
        throw InvalidInputError("write_matrix_csv: label count mismatch");
    std::ostringstream out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) out << ',';
        out << (labels.empty() ? std::to_string(j) : labels[j]);
    }
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    write_text(path, out.str());
}

Matrix read_matrix_csv(const fs::path& path) {
    auto in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw InvalidInputError("matrix csv: empty file");
    const std::size_t n = split_csv_line(line).size();
    Matrix m(n, n);
    std::size_t i = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != n || i >= n)
            throw InvalidInputError("matrix csv: not square");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_double(fields[j]);
        ++i;
    }
    if (i != n) throw InvalidInputError("matrix csv: not square");
    return m;
}

void write_diagram_csv(const fs::path& path, const PersistenceDiagram& diagram) {
    std::ostringstream out;
    out << "dimension,birth,death\n";
    for (const auto& p : diagram.pairs())
        out << p.dimension << ',' << format_double(p.birth) << ',' << format_double(p.death)
            << '\n';
    write_text(path, out.str());
}

PersistenceDiagram read_diagram_csv(const fs::path& path) {
    auto in = open_input(path);
    std::string line;
    std::getline(in, line); // header
    std::vector<PersistencePair> pairs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) throw InvalidInputError("diagram csv: expected 3 columns");
        pairs.push_back({static_cast<int>(std::stol(fields[0])), parse_double(fields[1]),
                         parse_double(fields[2])});
    }
    return PersistenceDiagram(std::move(pairs));
}

void write_embedding_csv(const fs::path& path, const Embedding& embedding,
                         const std::vector<std::string>& labels) {
    std::ostringstream out;
    out << "label";
    const std::size_t dims = embedding.points.empty() ? 0 : embedding.points.front().size();
    for (std::size_t k = 0; k < dims; ++k) out << ',' << static_cast<char>('x' + k);
    out << '\n';
    for (std::size_t i = 0; i < embedding.points.size(); ++i) {
        out << (i < labels.size() ? labels[i] : std::to_string(i));
        for (double v : embedding.points[i]) out << ',' << format_double(v);
        out << '\n';
    }
    write_text(path, out.str());
}

void write_accuracy_json(const fs::path& path, const std::string& method, bool normalized,
                         const AccuracyStats& stats, const std::vector<std::uint64_t>& seeds) {
    std::ostringstream out;
    out << "{\n  \"method\": \"" << method << "\",\n  \"normalized\": "
        << (normalized ? "true" : "false") << ",\n  \"mean\": " << format_double(stats.mean)
        << ",\n  \"std\": " << format_double(stats.stddev) << ",\n  \"seeds\": [";
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (i) out << ", ";
        out << seeds[i];
    }
    out << "]\n}\n";
    write_text(path, out.str());
}

void write_registry_json(const fs::path& path) {
    std::ostringstream out;
    out << "{\n  \"systems\": [\n";
    const auto& specs = registry();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& s = specs[i];
        out << "    {\n      \"name\": \"" << s.name << "\",\n      \"label\": \""
            << to_string(s.regime) << "\",\n      \"dimension\": " << s.dimension
            << ",\n      \"tau\": " << s.default_tau
            << ",\n      \"fs\": " << format_double(s.default_fs) << ",\n      \"parameters\": {";
        bool first = true;
        for (const auto& [k, v] : s.params) {
            if (!first) out << ", ";
            out << "\"" << k << "\": " << format_double(v);
            first = false;
        }
        out << "},\n      \"initial_state\": [";
        for (std::size_t k = 0; k < s.initial_state.size(); ++k) {
            if (k) out << ", ";
            out << format_double(s.initial_state[k]);
        }
        out << "]";
        if (!s.drive.empty()) out << ",\n      \"drive\": \"" << s.drive << "\"";
        out << "\n    }" << (i + 1 < specs.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    write_text(path, out.str());
}

} // namespace opnph::io
