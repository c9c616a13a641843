#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "satnls/diagnostics.hpp"
#include "satnls/soliton.hpp"
#include "support/oracles.hpp"

using namespace satnls;

TEST_CASE("trapezoid norm", "[diagnostics]") {
    const GridSpec grid = make_grid(64.0, 512);

    SECTION("zero field integrates to zero") {
        WaveState zero{grid, ComplexField(512, Complex(0.0, 0.0)), 0.0};
        CHECK(trapezoid_norm(zero) == 0.0);
        CHECK(trapezoid_norm(zero, NormIntegrand::Abs) == 0.0);
    }

    SECTION("single soliton matches the analytic integral 2*sqrt(2)/B") {
        // fine-quadrature oracle at N = 8192 confirms the analytic value
        for (const double s_value : {0.0, -0.1}) {
            const SaturationParam s{s_value};
            const double analytic = 2.0 * std::sqrt(2.0) / s.b();

            double fine = 0.0;
            const double fine_h = 64.0 / 8192.0;
            for (std::size_t j = 0; j < 8192; ++j) {
                const double mag =
                    oracles::profile_magnitude(static_cast<double>(j) * fine_h - 32.0,
                                               s.b());
                fine += mag * mag * fine_h;
            }
            CHECK_THAT(fine, Catch::Matchers::WithinRel(analytic, 1e-10));

            const WaveState state = init_one_soliton(grid, SolitonSpec{32.0, 10.0}, s);
            CHECK_THAT(trapezoid_norm(state), Catch::Matchers::WithinRel(analytic, 1e-10));
        }
    }

    SECTION("invariant under global phase rotation") {
        std::mt19937 rng(503);
        const WaveState state = oracles::random_state(grid, rng);
        WaveState rotated = state;
        for (Complex& z : rotated.amplitudes) z *= std::polar(1.0, 0.7361);
        CHECK_THAT(trapezoid_norm(rotated),
                   Catch::Matchers::WithinRel(trapezoid_norm(state), 1e-13));
    }

    SECTION("invariant under a velocity boost") {
        const WaveState still =
            init_one_soliton(grid, SolitonSpec{8.0, 0.0}, SaturationParam{-0.1});
        const WaveState boosted =
            init_one_soliton(grid, SolitonSpec{8.0, 20.0}, SaturationParam{-0.1});
        CHECK_THAT(trapezoid_norm(boosted),
                   Catch::Matchers::WithinRel(trapezoid_norm(still), 1e-13));
    }
}

TEST_CASE("conservation drift", "[diagnostics]") {
    const GridSpec grid = make_grid(64.0, 512);
    const WaveState state =
        init_one_soliton(grid, SolitonSpec{8.0, 10.0}, SaturationParam{-0.1});
    CHECK(conservation_drift(state, state) == 0.0);

    WaveState other{make_grid(30.0, 512), ComplexField(512), 0.0};
    CHECK_THROWS_AS(conservation_drift(state, other), GridMismatchError);
}

TEST_CASE("state distance", "[diagnostics]") {
    const GridSpec grid = make_grid(64.0, 512);
    std::mt19937 rng(509);
    const WaveState a = oracles::random_state(grid, rng);

    SECTION("identical states have zero distance") {
        const StateDistance d = state_distance(a, a);
        CHECK(d.l2 == 0.0);
        CHECK(d.linf == 0.0);
    }

    SECTION("a single perturbed sample gives linf = 1, l2 = sqrt(h)") {
        WaveState b = a;
        b.amplitudes[100] += Complex(1.0, 0.0);
        const StateDistance d = state_distance(a, b);
        CHECK(d.linf == 1.0);
        CHECK(d.l2 == std::sqrt(grid.spacing));
    }

    SECTION("grid mismatch is an error") {
        WaveState other{make_grid(30.0, 512), ComplexField(512), 0.0};
        CHECK_THROWS_AS(state_distance(a, other), GridMismatchError);
    }
}

TEST_CASE("peak report", "[diagnostics]") {
    const GridSpec grid = make_grid(64.0, 512);
    const SaturationParam s{-0.1};

    SECTION("single soliton has one peak") {
        const WaveState state = init_one_soliton(grid, SolitonSpec{8.0, 10.0}, s);
        CHECK(peak_report(state).count == 1);
    }

    SECTION("two separated solitons have two peaks") {
        const WaveState state = init_two_soliton(grid, SolitonSpec{8.0, 20.0},
                                                 SolitonSpec{18.0, -20.0}, s);
        const PeakReport report = peak_report(state);
        REQUIRE(report.count == 2);
        CHECK(report.peaks[0].index < report.peaks[1].index);
    }

    SECTION("constant field has no strict maxima") {
        WaveState flat{grid, ComplexField(512, Complex(1.0, 0.0)), 0.0};
        CHECK(peak_report(flat).count == 0);
    }

    SECTION("maxima within the merge radius chain into one peak") {
        WaveState state{grid, ComplexField(512, Complex(0.0, 0.0)), 0.0};
        state.amplitudes[100] = Complex(1.0, 0.0);
        state.amplitudes[105] = Complex(0.9, 0.0);  // distance 5: merged
        PeakReport merged = peak_report(state);
        REQUIRE(merged.count == 1);
        CHECK(merged.peaks[0].index == 100);
        CHECK(merged.peaks[0].magnitude == 1.0);

        state.amplitudes[105] = Complex(0.0, 0.0);
        state.amplitudes[106] = Complex(0.9, 0.0);  // distance 6: separate
        CHECK(peak_report(state).count == 2);
    }

    SECTION("merging works across the wrap") {
        WaveState state{grid, ComplexField(512, Complex(0.0, 0.0)), 0.0};
        state.amplitudes[510] = Complex(1.0, 0.0);
        state.amplitudes[2] = Complex(0.8, 0.0);  // circular distance 4
        const PeakReport report = peak_report(state);
        REQUIRE(report.count == 1);
        CHECK(report.peaks[0].index == 510);
    }

    SECTION("sub-threshold bumps are ignored") {
        WaveState state{grid, ComplexField(512, Complex(0.0, 0.0)), 0.0};
        state.amplitudes[100] = Complex(1.0, 0.0);
        state.amplitudes[300] = Complex(0.2, 0.0);  // below 25% of max
        CHECK(peak_report(state).count == 1);
        CHECK(peak_report(state, 0.1).count == 2);
    }
}

TEST_CASE("diagnostics record carries the global peak", "[diagnostics]") {
    const GridSpec grid = make_grid(64.0, 512);
    const WaveState state =
        init_one_soliton(grid, SolitonSpec{8.0, 10.0}, SaturationParam{-0.1});
    const DiagnosticsRecord rec = make_record(42, state);
    CHECK(rec.step_index == 42);
    CHECK(rec.time == 0.0);
    CHECK_THAT(rec.norm, Catch::Matchers::WithinRel(trapezoid_norm(state), 1e-15));
    CHECK(std::abs(static_cast<double>(rec.peak_index) - 64.0) <= 2.0);
    CHECK(rec.peak_amplitude > 1.0);
}
