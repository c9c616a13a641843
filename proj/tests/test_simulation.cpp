#include <catch_amalgamated.hpp>

#include <cmath>

#include "satnls/diagnostics.hpp"
#include "satnls/simulation.hpp"

using namespace satnls;

namespace {
RunConfig small_splitstep_config() {
    RunConfig config;
    config.scheme = Scheme::SplitStep;
    config.saturation = SaturationParam{-0.1};
    config.tau = 0.01;
    config.total_time = 0.1;  // 10 steps
    config.grid = make_grid(64.0, 512);
    config.solitons = {SolitonSpec{8.0, 10.0}};
    return config;
}
}  // namespace

TEST_CASE("run_simulation collects rows and diagnostics", "[simulation]") {
    const RunConfig config = small_splitstep_config();
    const RunOutput run = run_simulation(config);

    CHECK_FALSE(run.report.diverged);
    CHECK(run.magnitude_rows.size() == 10);        // pre-step levels 0..9
    CHECK(run.diagnostics.size() == 11);           // plus the final level
    CHECK(run.diagnostics.front().step_index == 0);
    CHECK(run.diagnostics.back().step_index == 10);
    CHECK_THAT(run.final_state.time, Catch::Matchers::WithinAbs(0.1, 1e-12));
    for (const auto& row : run.magnitude_rows) REQUIRE(row.size() == 512);

    const double drift =
        std::abs(run.diagnostics.front().norm - run.diagnostics.back().norm);
    CHECK(drift < 1e-12);
}

TEST_CASE("snapshot stride thins the rows", "[simulation]") {
    RunConfig config = small_splitstep_config();
    config.snapshot_stride = 4;
    const RunOutput run = run_simulation(config);
    CHECK(run.magnitude_rows.size() == 3);  // steps 0, 4, 8
    CHECK(run.diagnostics.size() == 4);
    CHECK(run.diagnostics[1].step_index == 4);
}

TEST_CASE("abs integrand is honored in the diagnostics", "[simulation]") {
    RunConfig config = small_splitstep_config();
    config.norm_integrand = NormIntegrand::Abs;
    const RunOutput run = run_simulation(config);
    const WaveState initial = initial_state(config);
    CHECK_THAT(run.diagnostics.front().norm,
               Catch::Matchers::WithinRel(trapezoid_norm(initial, NormIntegrand::Abs),
                                          1e-15));
}

TEST_CASE("fd divergence surfaces in the run output", "[simulation]") {
    RunConfig config;
    config.scheme = Scheme::FiniteDifference;
    config.saturation = SaturationParam{-0.1};
    config.tau = 0.004;  // unstable: h^2/2 is about 0.0017
    config.total_time = 1.0;
    config.grid = make_grid(30.0, 512);
    config.solitons = {SolitonSpec{8.0, 10.0}};

    const RunOutput run = run_simulation(config);
    CHECK(run.report.diverged);
    CHECK(run.report.divergence_step < config.step_count());
    CHECK(all_finite(run.final_state));  // the last finite level is kept
    CHECK(run.magnitude_rows.size() < config.step_count());
    for (const DiagnosticsRecord& rec : run.diagnostics)
        REQUIRE(std::isfinite(rec.norm));
}

TEST_CASE("fd two-soliton collision completes without divergence", "[simulation]") {
    RunConfig config;
    config.scheme = Scheme::FiniteDifference;
    config.saturation = SaturationParam{-0.1};
    config.tau = 0.001;
    config.total_time = 1.0;
    config.grid = make_grid(30.0, 512);
    config.solitons = {SolitonSpec{10.0, 20.0}, SolitonSpec{20.0, -20.0}};
    config.snapshot_stride = 100;

    const RunOutput run = run_simulation(config);
    CHECK_FALSE(run.report.diverged);
    CHECK(run.magnitude_rows.size() == 10);
    CHECK(peak_report(run.final_state).count == 2);  // separated again after t=1
}

TEST_CASE("fd run at the reference parameters conserves the norm", "[simulation]") {
    RunConfig config;
    config.scheme = Scheme::FiniteDifference;
    config.saturation = SaturationParam{-0.1};
    config.tau = 0.001;
    config.total_time = 0.009;  // bootstrap + 8 leapfrog steps
    config.grid = make_grid(30.0, 512);
    config.solitons = {SolitonSpec{8.0, 20.0}};

    const RunOutput run = run_simulation(config);
    CHECK_FALSE(run.report.diverged);
    CHECK(run.diagnostics.back().step_index == 9);
    CHECK(std::abs(run.diagnostics.front().norm - run.diagnostics.back().norm) < 1e-3);
}
