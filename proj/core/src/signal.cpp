#include "opnph/signal.hpp"

#include "opnph/errors.hpp"

#include <cmath>

namespace opnph {

std::string to_string(DynamicState s) {
    return s == DynamicState::periodic ? "periodic" : "chaotic";
}

DynamicState parse_dynamic_state(const std::string& s) {
    if (s == "periodic") return DynamicState::periodic;
    if (s == "chaotic") return DynamicState::chaotic;
    throw InvalidInputError("unknown dynamic state '" + s + "' (expected periodic|chaotic)");
}

Signal trim(const Signal& signal, double keep_fraction) {
    if (!(keep_fraction > 0.0) || keep_fraction > 1.0)
        throw InvalidInputError("trim: keep_fraction must be in (0, 1]");
    const std::size_t n = signal.samples.size();
    const auto keep = static_cast<std::size_t>(
        std::ceil(keep_fraction * static_cast<double>(n)));
    if (keep == 0 || keep > n)
        throw LengthError("trim: result would be empty");
    Signal out;
    out.samples.assign(signal.samples.end() - static_cast<std::ptrdiff_t>(keep),
                       signal.samples.end());
    out.fs = signal.fs;
    out.label = signal.label;
    return out;
}

double sample_mean(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double mean = sample_mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

} // namespace opnph
