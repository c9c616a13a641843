// Von Neumann stability analysis of the leapfrog scheme for the linearized
// equation i psi_t + 0.5 psi_xx = 0.
//
// Inserting the Fourier mode psi_{j,k} = alpha^k exp(i beta j) into the
// scheme yields the amplification quadratic
//
//   alpha^2 + (4 tau i / h^2) sin^2(beta/2) alpha - 1 = 0,
//
// whose roots stay on the unit circle exactly while
// (2 tau/h^2) sin^2(beta/2) <= 1, giving the step bound tau < h^2/2.
// The nonlinear term is ignored throughout, as the analysis assumes.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "satnls/core.hpp"

namespace satnls {

/// The two amplification-factor roots for one Fourier mode angle beta.
struct AmplificationResult {
    double beta = 0.0;
    std::array<Complex, 2> roots{};
    double max_magnitude = 0.0;
};

/// Closed-form roots alpha = -i c +/- sqrt(1 - c^2), c = (2 tau/h^2) sin^2(beta/2).
inline AmplificationResult amplification_roots(double tau, double h, double beta) {
    const double s = std::sin(0.5 * beta);
    const double c = (2.0 * tau / (h * h)) * s * s;
    const Complex sq = std::sqrt(Complex(1.0 - c * c, 0.0));
    AmplificationResult result;
    result.beta = beta;
    result.roots = {Complex(0.0, -c) + sq, Complex(0.0, -c) - sq};
    result.max_magnitude =
        std::max(std::abs(result.roots[0]), std::abs(result.roots[1]));
    return result;
}

/// Roots evaluated at beta = 2*pi*k/samples for k = 0..samples-1.
inline std::vector<AmplificationResult> sweep_modes(double tau, double h,
                                                    std::size_t samples) {
    std::vector<AmplificationResult> results;
    results.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double beta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        results.push_back(amplification_roots(tau, h, beta));
    }
    return results;
}

struct StabilityReport {
    double tau = 0.0;
    double h = 0.0;
    double threshold = 0.0;  // h^2/2
    bool stable = false;     // tau < h^2/2, strictly
    double worst_max_magnitude = 0.0;
    double worst_beta = 0.0;
    std::size_t sweep_samples = 0;
};

/// Threshold verdict plus the worst max |alpha| over a beta sweep. The
/// marginal case tau == h^2/2 counts as unstable: the beta = pi double root
/// sits on the unit circle but is defective, so modes still grow linearly.
inline StabilityReport is_stable(double tau, double h,
                                 std::size_t sweep_samples = 512) {
    StabilityReport report;
    report.tau = tau;
    report.h = h;
    report.threshold = 0.5 * h * h;
    report.stable = tau < report.threshold;
    report.sweep_samples = sweep_samples;
    for (const AmplificationResult& r : sweep_modes(tau, h, sweep_samples)) {
        if (r.max_magnitude > report.worst_max_magnitude) {
            report.worst_max_magnitude = r.max_magnitude;
            report.worst_beta = r.beta;
        }
    }
    return report;
}

}  // namespace satnls
