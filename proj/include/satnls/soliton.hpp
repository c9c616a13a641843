// One- and two-soliton initial conditions.
//
// The profile is f(x) = 2*sqrt(2)*exp(sqrt(2) x) / (1 + B exp(2 sqrt(2) x))
// with B = 3/2 - 2S, carried on the phase exp(i(t + v x)) where x is
// measured from the soliton center. The velocity multiplies the shifted
// coordinate, which is what actually transports the envelope.
#pragma once

#include <cmath>
#include <string>

#include "satnls/core.hpp"

namespace satnls {

/// Profile value at distance x_rel from the soliton center.
/// Throws SingularError if the denominator vanishes exactly (possible only
/// for B <= 0, i.e. S >= 3/4).
inline Complex soliton_profile(double x_rel, double t, SaturationParam s,
                               double velocity) {
    static const double kSqrt2 = std::sqrt(2.0);
    // f = 2*sqrt(2)*u / (1 + B u^2) with u = exp(sqrt(2) x), rewritten with
    // numerator and denominator divided by u so huge |x| degrades to 0
    // instead of inf/inf.
    const double den = std::exp(-kSqrt2 * x_rel) + s.b() * std::exp(kSqrt2 * x_rel);
    if (den == 0.0)
        throw SingularError("soliton profile denominator vanishes at x_rel = " +
                            std::to_string(x_rel) + " (S = " +
                            std::to_string(s.value) + ")");
    const double f = 2.0 * kSqrt2 / den;
    return f * std::polar(1.0, t + velocity * x_rel);
}

inline WaveState init_one_soliton(const GridSpec& grid, const SolitonSpec& spec,
                                  SaturationParam s) {
    if (spec.offset < 0.0 || spec.offset >= grid.length)
        throw ConfigError("soliton offset " + std::to_string(spec.offset) +
                          " outside [0, L)");
    WaveState state;
    state.grid = grid;
    state.time = 0.0;
    state.amplitudes.resize(grid.points);
    for (std::size_t j = 0; j < grid.points; ++j)
        state.amplitudes[j] = soliton_profile(grid.x(j) - spec.offset, 0.0, s,
                                              spec.velocity);
    return state;
}

/// Superposition of two single-soliton fields.
inline WaveState init_two_soliton(const GridSpec& grid, const SolitonSpec& first,
                                  const SolitonSpec& second, SaturationParam s) {
    WaveState state = init_one_soliton(grid, first, s);
    const WaveState other = init_one_soliton(grid, second, s);
    for (std::size_t j = 0; j < grid.points; ++j)
        state.amplitudes[j] += other.amplitudes[j];
    return state;
}

/// Initial state for a run config (one or two solitons).
inline WaveState initial_state(const RunConfig& config) {
    validate(config);
    if (config.solitons.size() == 1)
        return init_one_soliton(config.grid, config.solitons[0], config.saturation);
    return init_two_soliton(config.grid, config.solitons[0], config.solitons[1],
                            config.saturation);
}

}  // namespace satnls
