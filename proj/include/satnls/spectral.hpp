// Split-step Fourier method.
//
// One step solves the nonlinear part exactly as a pointwise phase rotation
// psi *= exp(i*tau*|psi|^2 / (1 + S|psi|^2)), then the linear part exactly
// in Fourier space, multiplying mode n by exp(-i*2*(pi n / L)^2 * tau).
#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "satnls/core.hpp"
#include "satnls/fft.hpp"

namespace satnls {

/// Per-mode linear propagators exp(-i*2*(pi n/L)^2 tau), stored in the
/// transform's native bin order (n in [-N/2, N/2)). Every factor has unit
/// modulus and depends on n only through n^2.
struct ModePhases {
    GridSpec grid;
    double tau = 0.0;
    ComplexField factors;
};

/// Precompute the linear propagator for a (grid, tau) pair; reuse it for
/// every step of a fixed-tau run.
inline ModePhases make_mode_phases(const GridSpec& grid, double tau) {
    ModePhases phases{grid, tau, ComplexField(grid.points)};
    for (std::size_t k = 0; k < grid.points; ++k) {
        const double n = static_cast<double>(fft::mode_index(k, grid.points));
        const double freq = std::numbers::pi * n / grid.length;
        phases.factors[k] = std::polar(1.0, -2.0 * freq * freq * tau);
    }
    return phases;
}

/// Exact nonlinear sub-step: pointwise phase rotation, |psi_j| preserved.
/// Throws SingularError if 1 + S|psi_j|^2 == 0 for some sample.
inline WaveState nonlinear_step(const WaveState& state, double tau,
                                SaturationParam s) {
    WaveState out = state;
    for (std::size_t j = 0; j < out.amplitudes.size(); ++j) {
        const double c = intensity(out.amplitudes[j]);
        const double den = 1.0 + s.value * c;
        if (den == 0.0)
            throw SingularError("saturated nonlinearity singular at sample " +
                                std::to_string(j) + ": |psi|^2 = " +
                                std::to_string(c) + ", S = " +
                                std::to_string(s.value));
        out.amplitudes[j] *= std::polar(1.0, tau * c / den);
    }
    return out;
}

/// Exact linear sub-step: FFT, multiply by the precomputed mode phases,
/// inverse FFT. Preserves the discrete L2 norm up to roundoff.
inline WaveState linear_step(const WaveState& state, const ModePhases& phases) {
    if (phases.grid != state.grid)
        throw GridMismatchError("mode phases were built for a different grid");
    WaveState out = state;
    fft::forward(out.amplitudes);
    for (std::size_t k = 0; k < out.amplitudes.size(); ++k)
        out.amplitudes[k] *= phases.factors[k];
    fft::inverse(out.amplitudes);
    return out;
}

/// One full step of size tau. Lie splitting applies the nonlinear rotation
/// then the linear step (the reference ordering); Strang wraps the full
/// linear step in two half-size nonlinear rotations for second order.
inline WaveState split_step(const WaveState& state, double tau, SaturationParam s,
                            const ModePhases& phases,
                            Splitting splitting = Splitting::Lie) {
    WaveState out =
        splitting == Splitting::Lie
            ? linear_step(nonlinear_step(state, tau, s), phases)
            : nonlinear_step(linear_step(nonlinear_step(state, 0.5 * tau, s), phases),
                             0.5 * tau, s);
    out.time = state.time + tau;
    return out;
}

}  // namespace satnls
