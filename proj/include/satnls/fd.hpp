// Explicit finite-difference scheme: one Forward Difference bootstrap step,
// then leapfrog Central Difference steps
//
//   psi_{k+1} = tau*i*(0.5*psi_xx + A_k psi_k) + psi_k        (bootstrap)
//   psi_{k+1} = 2*tau*i*(0.5*psi_xx + A_k psi_k) + psi_{k-1}  (leapfrog)
//
// with periodic wraparound in psi_xx and A = |psi|^2/(1 + S|psi|^2) taken
// from the current level. Stable only for tau < h^2/2 (see stability.hpp).
#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "satnls/core.hpp"
#include "satnls/diagnostics.hpp"

namespace satnls {

/// Two consecutive time levels of the leapfrog scheme.
struct LeapfrogState {
    WaveState previous;  // level k-1
    WaveState current;   // level k
};

/// Periodic 3-point second difference (psi_{j-1} - 2 psi_j + psi_{j+1})/h^2.
inline ComplexField discrete_laplacian(const WaveState& state) {
    const ComplexField& a = state.amplitudes;
    const std::size_t n = a.size();
    const double h2 = state.grid.spacing * state.grid.spacing;
    ComplexField out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex& left = a[(j + n - 1) % n];
        const Complex& right = a[(j + 1) % n];
        out[j] = (left - 2.0 * a[j] + right) / h2;
    }
    return out;
}

/// A = |psi|^2 / (1 + S |psi|^2); throws SingularError when the denominator
/// vanishes exactly.
inline double saturated_coefficient(Complex psi, SaturationParam s) {
    const double c = intensity(psi);
    const double den = 1.0 + s.value * c;
    if (den == 0.0)
        throw SingularError("saturated nonlinearity singular: |psi|^2 = " +
                            std::to_string(c) + ", S = " + std::to_string(s.value));
    return c / den;
}

/// One explicit Euler step (the leapfrog bootstrap).
inline WaveState forward_step(const WaveState& state, double tau,
                              SaturationParam s) {
    const ComplexField lap = discrete_laplacian(state);
    WaveState out = state;
    for (std::size_t j = 0; j < out.amplitudes.size(); ++j) {
        const double a = saturated_coefficient(state.amplitudes[j], s);
        out.amplitudes[j] = Complex(0.0, 1.0) * tau *
                                (0.5 * lap[j] + a * state.amplitudes[j]) +
                            state.amplitudes[j];
    }
    out.time = state.time + tau;
    return out;
}

/// One leapfrog step; returns (previous = old current, current = new level).
inline LeapfrogState central_step(const LeapfrogState& lf, double tau,
                                  SaturationParam s) {
    const ComplexField lap = discrete_laplacian(lf.current);
    WaveState next = lf.current;
    for (std::size_t j = 0; j < next.amplitudes.size(); ++j) {
        const double a = saturated_coefficient(lf.current.amplitudes[j], s);
        next.amplitudes[j] = 2.0 * Complex(0.0, 1.0) * tau *
                                 (0.5 * lap[j] + a * lf.current.amplitudes[j]) +
                             lf.previous.amplitudes[j];
    }
    next.time = lf.current.time + tau;
    return LeapfrogState{lf.current, next};
}

/// Early-abort report for a run that blew up.
struct EvolveReport {
    bool diverged = false;
    std::size_t divergence_step = 0;
    double last_finite_norm = 0.0;
};

struct FdEvolveResult {
    LeapfrogState state;
    EvolveReport report;
};

using SnapshotSink = std::function<void(std::size_t step, const WaveState&)>;

/// Runs floor(T/tau) time steps: one forward_step, then leapfrog steps,
/// calling sink every snapshot_stride steps with the pre-step state (so a
/// stride of 1 emits the levels t = 0 .. T-tau). Aborts once any amplitude
/// goes non-finite or the trapezoidal norm exceeds 10x its initial value;
/// the report then carries the offending step and the last finite norm.
inline FdEvolveResult evolve_fd(const WaveState& initial, const RunConfig& config,
                                const SnapshotSink& sink) {
    if (config.scheme != Scheme::FiniteDifference)
        throw ConfigError("evolve_fd called with a non-fd scheme");
    validate(config);

    const std::size_t steps = config.step_count();
    const double norm_limit = 10.0 * trapezoid_norm(initial);
    double last_norm = trapezoid_norm(initial);

    FdEvolveResult result;
    result.state = LeapfrogState{initial, initial};

    auto check = [&](const WaveState& state, std::size_t step) {
        if (!all_finite(state)) {
            result.report = EvolveReport{true, step, last_norm};
            return false;
        }
        const double norm = trapezoid_norm(state);
        if (norm > norm_limit) {
            result.report = EvolveReport{true, step, norm};
            return false;
        }
        last_norm = norm;
        return true;
    };

    if (sink) sink(0, initial);
    result.state = LeapfrogState{initial, forward_step(initial, config.tau,
                                                       config.saturation)};
    if (!check(result.state.current, 1)) return result;

    for (std::size_t k = 1; k < steps; ++k) {
        if (sink && k % config.snapshot_stride == 0) sink(k, result.state.current);
        result.state = central_step(result.state, config.tau, config.saturation);
        if (!check(result.state.current, k + 1)) return result;
    }
    return result;
}

}  // namespace satnls
