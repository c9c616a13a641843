// Shared domain types for the saturable NLS solvers: grid, wave state,
// soliton parameters, run configuration and per-step diagnostics rows.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace satnls {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;

/// Invalid parameters, config files or CLI arguments.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file; the message carries the offending line number.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A denominator of the soliton profile or of the saturated nonlinearity
/// vanished exactly.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two states that were expected to share a grid do not.
struct GridMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

/// |z|^2 without the sqrt/ulp detour of std::abs.
inline double intensity(Complex z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

/// Uniform periodic 1-D mesh on [0, L): x_j = j*h, j = 0..points-1.
struct GridSpec {
    double length = 0.0;      // L
    std::size_t points = 0;   // N, power of two
    double spacing = 0.0;     // h = L/N, derived in make_grid

    double x(std::size_t j) const { return static_cast<double>(j) * spacing; }

    bool operator==(const GridSpec&) const = default;
};

/// points must be a power of two (>= 8) so the spectral transform can run
/// radix-2; length must be positive.
inline GridSpec make_grid(double length, std::size_t points) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ConfigError("grid length must be positive and finite, got " +
                          std::to_string(length));
    if (points < 8 || !is_power_of_two(points))
        throw ConfigError("grid points must be a power of two >= 8, got " +
                          std::to_string(points));
    return GridSpec{length, points, length / static_cast<double>(points)};
}

/// Complex field samples psi(x_j, t) on a grid.
struct WaveState {
    GridSpec grid;
    ComplexField amplitudes;  // size == grid.points
    double time = 0.0;
};

inline bool all_finite(const WaveState& state) {
    for (const Complex& z : state.amplitudes)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

/// Center position and phase-gradient velocity of one soliton.
struct SolitonSpec {
    double offset = 0.0;
    double velocity = 0.0;

    bool operator==(const SolitonSpec&) const = default;
};

/// Saturation strength S. The profile coefficient B = 3/2 - 2S is derived
/// here and nowhere else; B <= 0 (S >= 3/4) makes the soliton profile
/// denominator sign-changing, which is permitted but worth a warning.
struct SaturationParam {
    double value = 0.0;  // S

    double b() const { return 1.5 - 2.0 * value; }
    bool profile_can_be_singular() const { return b() <= 0.0; }

    bool operator==(const SaturationParam&) const = default;
};

enum class Scheme { SplitStep, FiniteDifference };
enum class Splitting { Lie, Strang };
enum class NormIntegrand { Abs2, Abs };

/// Everything needed to reproduce one simulation run.
struct RunConfig {
    Scheme scheme = Scheme::SplitStep;
    SaturationParam saturation{};
    double tau = 0.0;         // time step
    double total_time = 0.0;  // T
    GridSpec grid{};
    std::vector<SolitonSpec> solitons;
    std::size_t snapshot_stride = 1;
    Splitting splitting = Splitting::Lie;
    NormIntegrand norm_integrand = NormIntegrand::Abs2;
    std::string output_dir;  // set by the CLI, not part of the config format

    std::size_t step_count() const {
        return static_cast<std::size_t>(std::floor(total_time / tau));
    }

    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
inline void validate(const RunConfig& config) {
    if (!(config.tau > 0.0) || !std::isfinite(config.tau))
        throw ConfigError("tau: must be a positive finite time step");
    if (!(config.total_time > 0.0) || !std::isfinite(config.total_time))
        throw ConfigError("T: must be a positive finite simulation time");
    if (config.step_count() < 1)
        throw ConfigError("T: floor(T/tau) must be at least one step");
    if (!std::isfinite(config.saturation.value))
        throw ConfigError("S: must be finite");
    if (config.solitons.empty() || config.solitons.size() > 2)
        throw ConfigError("solitons: expected one or two offset:velocity pairs, got " +
                          std::to_string(config.solitons.size()));
    for (const SolitonSpec& s : config.solitons) {
        if (!std::isfinite(s.offset) || !std::isfinite(s.velocity))
            throw ConfigError("solitons: offset and velocity must be finite");
        if (s.offset < 0.0 || s.offset >= config.grid.length)
            throw ConfigError("solitons: offset " + std::to_string(s.offset) +
                              " outside [0, L)");
    }
    if (config.snapshot_stride < 1)
        throw ConfigError("snapshot_stride: must be >= 1");
    // re-derive to catch hand-built grids that bypassed make_grid
    make_grid(config.grid.length, config.grid.points);
}

/// One row of the per-step diagnostics log.
struct DiagnosticsRecord {
    std::size_t step_index = 0;
    double time = 0.0;
    double norm = 0.0;            // trapezoidal integral of Eq.-18 type
    double peak_amplitude = 0.0;  // max_j |psi_j|
    std::size_t peak_index = 0;
};

}  // namespace satnls
