#pragma once

#include "opnph/signal.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace opnph {

/// Right-hand side of an ODE: writes f(t, state) into deriv.
/// deriv.size() == state.size() == SystemSpec::dimension.
using VectorField =
    std::function<void(double t, std::span<const double> state, std::span<double> deriv)>;

/// One parameterization of a continuous flow from the registry.
struct SystemSpec {
    std::string name;
    int dimension = 0;
    std::map<std::string, double> params;
    VectorField rhs;
    std::string drive; // empty for autonomous flows, otherwise a description of the forcing
    int default_tau = 50;     // samples
    double default_fs = 100.0; // Hz
    std::vector<double> initial_state;
    DynamicState regime = DynamicState::periodic;
    int observe_index = 0; // state coordinate reported as the observation
};

struct NoiseSpec {
    double snr_db = std::numeric_limits<double>::infinity();
    double truncation = 3.0; // in multiples of the noise sigma
    std::uint64_t seed = 0;
};

/// Fixed-step RK4 at step 1/fs. Returns round(duration_s * fs) samples of the
/// observation coordinate, the first taken at t = 0. A nonzero seed applies a
/// deterministic relative perturbation of magnitude 1e-6 to the initial state.
/// Throws DivergenceError naming the time of blow-up if the state leaves the
/// finite range.
Signal integrate(const SystemSpec& spec, double duration_s, double fs,
                 std::span<const double> initial_state, std::uint64_t seed = 0);

/// integrate() with the system's own defaults: 750 * tau / fs seconds at
/// default_fs from initial_state, keeping only the last fifth.
Signal simulate_default(const SystemSpec& spec, std::uint64_t seed = 0);

/// Scale the signal to unit sample standard deviation, then add zero-mean
/// Gaussian noise with sigma_n = 10^(-snr_db/20), each draw rejected and
/// redrawn until |draw| <= truncation * sigma_n (a true truncated Gaussian,
/// total amplitude bound 2 * truncation * sigma_n). snr_db = +inf adds
/// nothing. Deterministic under a fixed seed.
Signal add_noise(const Signal& signal, const NoiseSpec& noise);

/// All registered systems, both regimes of each. Parameter values and their
/// sources are documented in the registry table (dynsys.cpp).
const std::vector<SystemSpec>& registry();

std::vector<std::string> registry_names();

/// Lookup by name and regime; optional parameter overrides rebuild the vector
/// field with the merged values. Throws NotFoundError listing the registry.
SystemSpec find_system(const std::string& name, DynamicState regime,
                       const std::map<std::string, double>& overrides = {});

} // namespace opnph
