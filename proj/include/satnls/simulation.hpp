// Run orchestration shared by the CLI and the tests: build the initial
// state, march the configured scheme, collect magnitude rows and
// diagnostics, detect divergence.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "satnls/core.hpp"
#include "satnls/diagnostics.hpp"
#include "satnls/fd.hpp"
#include "satnls/soliton.hpp"
#include "satnls/spectral.hpp"

namespace satnls {

struct SplitStepEvolveResult {
    WaveState state;
    EvolveReport report;
};

/// Split-step counterpart of evolve_fd: floor(T/tau) steps, sink sees the
/// pre-step state every snapshot_stride steps. The spectral step is unitary
/// so divergence is not expected, but the same guards run for uniformity.
inline SplitStepEvolveResult evolve_splitstep(const WaveState& initial,
                                              const RunConfig& config,
                                              const SnapshotSink& sink) {
    if (config.scheme != Scheme::SplitStep)
        throw ConfigError("evolve_splitstep called with a non-splitstep scheme");
    validate(config);

    const std::size_t steps = config.step_count();
    const ModePhases phases = make_mode_phases(config.grid, config.tau);
    const double norm_limit = 10.0 * trapezoid_norm(initial);
    double last_norm = trapezoid_norm(initial);

    SplitStepEvolveResult result{initial, {}};
    for (std::size_t k = 0; k < steps; ++k) {
        if (sink && k % config.snapshot_stride == 0) sink(k, result.state);
        WaveState next = split_step(result.state, config.tau, config.saturation,
                                    phases, config.splitting);
        if (!all_finite(next)) {
            // keep the last finite level in result.state
            result.report = EvolveReport{true, k + 1, last_norm};
            return result;
        }
        const double norm = trapezoid_norm(next);
        result.state = std::move(next);
        if (norm > norm_limit) {
            result.report = EvolveReport{true, k + 1, norm};
            return result;
        }
        last_norm = norm;
    }
    return result;
}

struct RunOutput {
    WaveState final_state;  // last computed level (last finite one if diverged)
    EvolveReport report;
    std::vector<std::vector<double>> magnitude_rows;  // one per emitted snapshot
    std::vector<DiagnosticsRecord> diagnostics;       // snapshots plus final level
};

/// Full run from a config: initial solitons, scheme dispatch, magnitude rows
/// and diagnostics at snapshot cadence plus the final level.
inline RunOutput run_simulation(const RunConfig& config) {
    const WaveState initial = initial_state(config);

    RunOutput output;
    const SnapshotSink sink = [&](std::size_t step, const WaveState& state) {
        std::vector<double> row(state.amplitudes.size());
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = std::abs(state.amplitudes[j]);
        output.magnitude_rows.push_back(std::move(row));
        output.diagnostics.push_back(make_record(step, state, config.norm_integrand));
    };

    if (config.scheme == Scheme::SplitStep) {
        SplitStepEvolveResult r = evolve_splitstep(initial, config, sink);
        output.final_state = std::move(r.state);  // last finite level either way
        output.report = r.report;
    } else {
        FdEvolveResult r = evolve_fd(initial, config, sink);
        output.final_state = r.report.diverged ? std::move(r.state.previous)
                                               : std::move(r.state.current);
        output.report = r.report;
    }

    if (!output.report.diverged)
        output.diagnostics.push_back(make_record(config.step_count(),
                                                 output.final_state,
                                                 config.norm_integrand));
    return output;
}

}  // namespace satnls
