// satnls command line: simulate | conserve | stability | compare | bench
//
// Exit codes: 0 success, 1 config error, 2 divergence detected,
// 3 negative stability verdict (stability subcommand only).
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satnls/satnls.hpp"

namespace {

using namespace satnls;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitUnstable = 3;

struct Overrides {
    std::optional<std::string> scheme;
    std::optional<double> s;
    std::optional<double> tau;
    std::optional<double> total_time;
    std::optional<double> length;
    std::optional<std::size_t> points;
    std::optional<std::string> solitons;
    std::optional<std::size_t> snapshot_stride;
    std::optional<std::string> splitting;
    std::optional<std::string> norm_integrand;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--scheme", ov.scheme, "Override scheme (splitstep|fd)");
    cmd->add_option("--s", ov.s, "Override saturation parameter S");
    cmd->add_option("--tau", ov.tau, "Override time step");
    cmd->add_option("--T", ov.total_time, "Override simulation time");
    cmd->add_option("--L", ov.length, "Override domain length");
    cmd->add_option("--N", ov.points, "Override mesh point count (power of two)");
    cmd->add_option("--solitons", ov.solitons,
                    "Override solitons, e.g. \"8:20;18:-20\"");
    cmd->add_option("--snapshot-stride", ov.snapshot_stride,
                    "Override snapshot stride");
    cmd->add_option("--splitting", ov.splitting, "Override splitting (lie|strang)");
    cmd->add_option("--norm-integrand", ov.norm_integrand,
                    "Override norm integrand (abs2|abs)");
}

// Re-serialize the override into config text and reuse the config parser so
// flag values face the same validation as file values.
RunConfig apply_overrides(const RunConfig& base, const Overrides& ov) {
    RunConfig merged = base;
    if (ov.scheme) {
        if (*ov.scheme == "splitstep") merged.scheme = Scheme::SplitStep;
        else if (*ov.scheme == "fd") merged.scheme = Scheme::FiniteDifference;
        else throw ConfigError("--scheme: expected 'splitstep' or 'fd', got '" +
                               *ov.scheme + "'");
    }
    if (ov.s) merged.saturation.value = *ov.s;
    if (ov.tau) merged.tau = *ov.tau;
    if (ov.total_time) merged.total_time = *ov.total_time;
    if (ov.length || ov.points)
        merged.grid = make_grid(ov.length.value_or(base.grid.length),
                                ov.points.value_or(base.grid.points));
    if (ov.solitons) {
        merged.solitons.clear();
        for (std::string_view pair : detail::split(*ov.solitons, ';')) {
            pair = detail::trim(pair);
            const auto parts = detail::split(pair, ':');
            if (parts.size() != 2)
                throw ConfigError("--solitons: expected offset:velocity, got '" +
                                  std::string(pair) + "'");
            merged.solitons.push_back(
                SolitonSpec{detail::parse_double(detail::trim(parts[0]), "--solitons"),
                            detail::parse_double(detail::trim(parts[1]), "--solitons")});
        }
    }
    if (ov.snapshot_stride) merged.snapshot_stride = *ov.snapshot_stride;
    if (ov.splitting) {
        if (*ov.splitting == "lie") merged.splitting = Splitting::Lie;
        else if (*ov.splitting == "strang") merged.splitting = Splitting::Strang;
        else throw ConfigError("--splitting: expected 'lie' or 'strang'");
    }
    if (ov.norm_integrand) {
        if (*ov.norm_integrand == "abs2") merged.norm_integrand = NormIntegrand::Abs2;
        else if (*ov.norm_integrand == "abs") merged.norm_integrand = NormIntegrand::Abs;
        else throw ConfigError("--norm-integrand: expected 'abs2' or 'abs'");
    }
    validate(merged);
    return merged;
}

void warn_if_profile_singular(const RunConfig& config) {
    if (config.saturation.profile_can_be_singular())
        std::cout << "warning: S = " << config.saturation.value
                  << " gives B = " << config.saturation.b()
                  << " <= 0; the soliton profile denominator can change sign"
                  << " and the dynamics become noisy\n";
}

std::optional<StabilityReport> preflight(const RunConfig& config) {
    if (config.scheme != Scheme::FiniteDifference) return std::nullopt;
    StabilityReport report = is_stable(config.tau, config.grid.spacing);
    std::cout << "stability preflight (linearized, nonlinear term neglected): tau = "
              << format_double(report.tau) << ", h^2/2 = "
              << format_double(report.threshold) << " -> "
              << (report.stable ? "stable" : "UNSTABLE") << "\n";
    if (!report.stable)
        std::cout << "warning: tau >= h^2/2; expect exponential error growth"
                  << " (running anyway)\n";
    return report;
}

int cmd_simulate(const std::string& config_path, const Overrides& ov,
                 const std::string& out_dir) {
    RunConfig config = apply_overrides(parse_config(config_path), ov);
    config.output_dir = out_dir;
    warn_if_profile_singular(config);
    const std::optional<StabilityReport> report = preflight(config);

    fs::create_directories(out_dir);
    const RunOutput run = run_simulation(config);

    write_evolution(run.magnitude_rows, config.grid, config.tau,
                    fs::path(out_dir) / "evolution.csv");
    write_diagnostics_csv(run.diagnostics, fs::path(out_dir) / "diagnostics.csv");
    write_manifest(config, report, out_dir, kVersion);

    if (run.report.diverged) {
        std::cout << "DIVERGED at step " << run.report.divergence_step << " of "
                  << config.step_count() << " (last finite norm "
                  << format_double(run.report.last_finite_norm)
                  << "); partial outputs in " << out_dir << "\n";
        return kExitDiverged;
    }

    write_snapshot(run.final_state, fs::path(out_dir) / "final_snapshot.csv");
    std::cout << "completed " << config.step_count() << " steps to t = "
              << format_double(run.final_state.time) << "; norm drift = "
              << format_double(std::abs(run.diagnostics.front().norm -
                                        run.diagnostics.back().norm))
              << "; outputs in " << out_dir << "\n";
    return kExitOk;
}

// The short single-soliton conservation check: scheme-specific reference
// parameters, 8 steps by default, pass iff the drift stays under 1e-3.
int cmd_conserve(const std::string& scheme, std::size_t steps,
                 std::optional<double> tau_override,
                 const std::string& integrand_name) {
    NormIntegrand integrand;
    if (integrand_name == "abs2") integrand = NormIntegrand::Abs2;
    else if (integrand_name == "abs") integrand = NormIntegrand::Abs;
    else throw ConfigError("--norm-integrand: expected 'abs2' or 'abs'");

    const SaturationParam s{-0.1};
    WaveState state;
    double tau = 0.0;
    if (scheme == "splitstep") {
        tau = tau_override.value_or(0.01);
        state = init_one_soliton(make_grid(64.0, 512), SolitonSpec{8.0, 10.0}, s);
    } else if (scheme == "fd") {
        tau = tau_override.value_or(0.001);
        state = init_one_soliton(make_grid(30.0, 512), SolitonSpec{8.0, 20.0}, s);
    } else {
        throw ConfigError("conserve: scheme must be 'splitstep' or 'fd'");
    }

    const double initial_norm = trapezoid_norm(state, integrand);
    if (scheme == "splitstep") {
        const ModePhases phases = make_mode_phases(state.grid, tau);
        WaveState current = state;
        for (std::size_t k = 0; k < steps; ++k)
            current = split_step(current, tau, s, phases);
        state = current;
    } else {
        LeapfrogState lf{state, forward_step(state, tau, s)};
        for (std::size_t k = 0; k < steps; ++k) lf = central_step(lf, tau, s);
        state = lf.current;
    }

    if (!all_finite(state)) {
        std::cout << "conserve " << scheme << ": state diverged (non-finite)\n";
        return kExitDiverged;
    }
    const double drift = std::abs(initial_norm - trapezoid_norm(state, integrand));
    const bool pass = drift < 1e-3;
    std::cout << "conserve " << scheme << ": tau = " << format_double(tau) << ", "
              << steps << (scheme == "fd" ? " steps after bootstrap" : " steps")
              << ", norm drift = " << format_double(drift) << " ("
              << integrand_name << " integrand) -> "
              << (pass ? "PASS (< 1e-3)" : "FAIL (>= 1e-3)") << "\n";
    return pass ? kExitOk : kExitDiverged;
}

int cmd_stability(double tau, double length, std::size_t points,
                  std::optional<std::size_t> sweep) {
    const GridSpec grid = make_grid(length, points);
    const StabilityReport report = is_stable(tau, grid.spacing);
    std::cout << "leapfrog stability (linearized equation; the nonlinear term is"
              << " assumed negligible)\n";
    std::cout << "tau = " << format_double(tau) << ", h = "
              << format_double(grid.spacing) << ", threshold h^2/2 = "
              << format_double(report.threshold) << "\n";
    std::cout << "worst max |alpha| over " << report.sweep_samples
              << "-point beta sweep: " << format_double(report.worst_max_magnitude)
              << "\n";
    std::cout << "verdict: " << (report.stable ? "stable" : "unstable") << "\n";

    if (sweep) {
        std::cout << "beta,abs_alpha_1,abs_alpha_2,max\n";
        for (const AmplificationResult& r : sweep_modes(tau, grid.spacing, *sweep))
            std::cout << format_double(r.beta) << ','
                      << format_double(std::abs(r.roots[0])) << ','
                      << format_double(std::abs(r.roots[1])) << ','
                      << format_double(r.max_magnitude) << "\n";
    }
    return report.stable ? kExitOk : kExitUnstable;
}

void print_peak_timeline(const char* label,
                         const std::vector<std::pair<std::size_t, std::size_t>>& counts) {
    std::cout << label << " peak counts:";
    std::size_t last = static_cast<std::size_t>(-1);
    for (const auto& [step, count] : counts) {
        if (count != last) {
            std::cout << " step " << step << " -> " << count << ";";
            last = count;
        }
    }
    std::cout << "\n";
}

// Runs both schemes from the identical initial state with an FD-safe tau.
int cmd_compare(const std::string& config_path, const Overrides& ov) {
    RunConfig base = apply_overrides(parse_config(config_path), ov);
    const double threshold = 0.5 * base.grid.spacing * base.grid.spacing;
    if (base.tau >= threshold) {
        const double safe = 0.5 * threshold;
        std::cout << "tau " << format_double(base.tau) << " is not FD-safe"
                  << " (threshold " << format_double(threshold) << "); using "
                  << format_double(safe) << " for both schemes\n";
        base.tau = safe;
    }
    warn_if_profile_singular(base);

    std::vector<std::pair<std::size_t, std::size_t>> ss_counts, fd_counts;
    WaveState ss_final, fd_final;

    {
        RunConfig c = base;
        c.scheme = Scheme::SplitStep;
        const WaveState initial = initial_state(c);
        auto r = evolve_splitstep(initial, c, [&](std::size_t k, const WaveState& st) {
            ss_counts.emplace_back(k, peak_report(st).count);
        });
        if (r.report.diverged) {
            std::cout << "splitstep run diverged at step " << r.report.divergence_step << "\n";
            return kExitDiverged;
        }
        ss_final = std::move(r.state);
        ss_counts.emplace_back(c.step_count(), peak_report(ss_final).count);
    }
    {
        RunConfig c = base;
        c.scheme = Scheme::FiniteDifference;
        const WaveState initial = initial_state(c);
        auto r = evolve_fd(initial, c, [&](std::size_t k, const WaveState& st) {
            fd_counts.emplace_back(k, peak_report(st).count);
        });
        if (r.report.diverged) {
            std::cout << "fd run diverged at step " << r.report.divergence_step << "\n";
            return kExitDiverged;
        }
        fd_final = std::move(r.state.current);
        fd_counts.emplace_back(c.step_count(), peak_report(fd_final).count);
    }

    print_peak_timeline("splitstep", ss_counts);
    print_peak_timeline("fd       ", fd_counts);

    const StateDistance d = state_distance(ss_final, fd_final);
    std::cout << "state distance at t = " << format_double(ss_final.time)
              << ": l2 = " << format_double(d.l2) << ", linf = "
              << format_double(d.linf) << "\n";
    std::cout << "final norms: splitstep " << format_double(trapezoid_norm(ss_final))
              << ", fd " << format_double(trapezoid_norm(fd_final)) << "\n";
    return kExitOk;
}

// Wall-clock timing of both schemes; informational only -- absolute numbers
// depend on the machine, so nothing is asserted anywhere against them.
int cmd_bench(const std::string& config_path, const Overrides& ov,
              std::size_t repeat) {
    using clock = std::chrono::steady_clock;
    RunConfig base = apply_overrides(parse_config(config_path), ov);
    if (repeat < 1) throw ConfigError("--repeat: must be >= 1");
    if (repeat == 1)
        std::cout << "note: --repeat 1 gives a single noisy measurement\n";

    std::cout << "scheme,steps,run_median_s,run_min_s,run_max_s,per_step_median_s\n";
    for (const Scheme scheme : {Scheme::SplitStep, Scheme::FiniteDifference}) {
        RunConfig c = base;
        c.scheme = scheme;
        if (scheme != base.scheme)
            c.tau = scheme == Scheme::SplitStep ? 0.01 : 0.001;
        if (scheme == Scheme::FiniteDifference) {
            const double threshold = 0.5 * c.grid.spacing * c.grid.spacing;
            while (c.tau >= threshold) c.tau *= 0.5;
        }
        validate(c);

        const WaveState initial = initial_state(c);
        std::vector<double> seconds;
        bool diverged = false;
        for (std::size_t rep = 0; rep < repeat; ++rep) {
            const auto start = clock::now();
            if (scheme == Scheme::SplitStep) {
                auto r = evolve_splitstep(initial, c, nullptr);
                diverged = r.report.diverged;
            } else {
                auto r = evolve_fd(initial, c, nullptr);
                diverged = r.report.diverged;
            }
            seconds.push_back(std::chrono::duration<double>(clock::now() - start).count());
        }
        std::sort(seconds.begin(), seconds.end());
        const double median = seconds[seconds.size() / 2];
        const double steps = static_cast<double>(c.step_count());
        std::cout << (scheme == Scheme::SplitStep ? "splitstep" : "fd") << ','
                  << c.step_count() << ',' << format_double(median) << ','
                  << format_double(seconds.front()) << ','
                  << format_double(seconds.back()) << ','
                  << format_double(median / steps)
                  << (diverged ? ",diverged" : "") << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"satnls: saturable nonlinear Schrödinger equation simulator"};
    app.set_version_flag("--version", std::string("satnls ") + satnls::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", scheme, integrand = "abs2";
    std::size_t steps = 8, repeat = 5, points = 512;
    double tau = 0.0, length = 0.0;
    std::optional<double> tau_override;
    std::optional<std::size_t> sweep;
    Overrides ov_sim, ov_cmp, ov_bench;

    CLI::App* sim = app.add_subcommand("simulate", "Run a configured simulation");
    sim->add_option("--config", config_path, "Run config file")->required();
    sim->add_option("--out", out_dir, "Output directory (default: out)");
    add_override_flags(sim, ov_sim);

    CLI::App* con = app.add_subcommand(
        "conserve", "Single-soliton conservation check (reference parameters)");
    con->add_option("scheme", scheme, "splitstep or fd")->required();
    con->add_option("--steps", steps, "Number of steps (default 8)");
    con->add_option("--tau", tau_override, "Override the reference time step");
    con->add_option("--norm-integrand", integrand, "abs2 (default) or abs");

    CLI::App* stab = app.add_subcommand(
        "stability", "Von Neumann threshold check for the leapfrog scheme");
    stab->add_option("tau", tau, "Time step")->required();
    stab->add_option("L", length, "Domain length")->required();
    stab->add_option("N", points, "Mesh points (power of two)")->required();
    stab->add_option("--sweep", sweep, "Also print a beta sweep with this many samples");

    CLI::App* cmp = app.add_subcommand(
        "compare", "Run both schemes from the same initial state and compare");
    cmp->add_option("--config", config_path, "Run config file")->required();
    add_override_flags(cmp, ov_cmp);

    CLI::App* bench = app.add_subcommand("bench", "Time both schemes on a config");
    bench->add_option("--config", config_path, "Run config file")->required();
    bench->add_option("--repeat", repeat, "Repetitions per scheme (default 5)");
    add_override_flags(bench, ov_bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, ov_sim, out_dir);
        if (con->parsed()) return cmd_conserve(scheme, steps, tau_override, integrand);
        if (stab->parsed()) return cmd_stability(tau, length, points, sweep);
        if (cmp->parsed()) return cmd_compare(config_path, ov_cmp);
        if (bench->parsed()) return cmd_bench(config_path, ov_bench, repeat);
    } catch (const satnls::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const satnls::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
