#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace opnph {

enum class DynamicState { periodic, chaotic };

std::string to_string(DynamicState s);
DynamicState parse_dynamic_state(const std::string& s);

/// Uniformly sampled scalar time series.
struct Signal {
    std::vector<double> samples;
    double fs = 0.0; // Hz
    std::optional<DynamicState> label;

    std::size_t size() const { return samples.size(); }
    double duration_s() const { return fs > 0 ? static_cast<double>(samples.size()) / fs : 0.0; }
};

/// Keep the trailing ceil(keep_fraction * N) samples; fs and label preserved.
/// keep_fraction must be in (0, 1].
Signal trim(const Signal& signal, double keep_fraction);

/// Sample standard deviation (N-1 divisor).
double sample_std(std::span<const double> values);
double sample_mean(std::span<const double> values);

} // namespace opnph
