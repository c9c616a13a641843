// File formats: field snapshots, evolution matrices, diagnostics logs,
// key=value run configs and run manifests. All formats are UTF-8 text with
// LF line endings; reals are written with 17 significant digits so doubles
// round-trip exactly.
#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "satnls/core.hpp"
#include "satnls/stability.hpp"

namespace satnls {

inline std::string format_double(double value) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof(buf), "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

namespace detail {

inline double parse_double(std::string_view text, const std::string& where) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(where + ": expected a real number, got '" +
                         std::string(text) + "'");
    return value;
}

inline std::size_t parse_size(std::string_view text, const std::string& where) {
    std::size_t value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(where + ": expected a nonnegative integer, got '" +
                         std::string(text) + "'");
    return value;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() &&
           (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    return text;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    return out;
}

}  // namespace detail

// --- snapshots --------------------------------------------------------------
//
//   # satnls-snapshot v1
//   # L=<decimal> N=<integer> t=<decimal>
//   x,re,im            (N data lines)

inline void write_snapshot(const WaveState& state,
                           const std::filesystem::path& path) {
    std::ofstream out = detail::open_out(path);
    out << "# satnls-snapshot v1\n";
    out << "# L=" << format_double(state.grid.length) << " N=" << state.grid.points
        << " t=" << format_double(state.time) << "\n";
    for (std::size_t j = 0; j < state.amplitudes.size(); ++j) {
        out << format_double(state.grid.x(j)) << ','
            << format_double(state.amplitudes[j].real()) << ','
            << format_double(state.amplitudes[j].imag()) << '\n';
    }
}

inline WaveState read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open snapshot '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "# satnls-snapshot v1")
        throw ParseError("line 1: expected '# satnls-snapshot v1'");
    if (!std::getline(in, line))
        throw ParseError("line 2: missing snapshot header");

    std::string_view header = detail::trim(line);
    if (!header.starts_with("# "))
        throw ParseError("line 2: malformed snapshot header");
    header.remove_prefix(2);
    double length = 0.0, time = 0.0;
    std::size_t points = 0;
    bool have_l = false, have_n = false, have_t = false;
    for (std::string_view field : detail::split(header, ' ')) {
        if (field.empty()) continue;
        if (field.starts_with("L=")) {
            length = detail::parse_double(field.substr(2), "line 2, L");
            have_l = true;
        } else if (field.starts_with("N=")) {
            points = detail::parse_size(field.substr(2), "line 2, N");
            have_n = true;
        } else if (field.starts_with("t=")) {
            time = detail::parse_double(field.substr(2), "line 2, t");
            have_t = true;
        } else {
            throw ParseError("line 2: unknown header field '" + std::string(field) + "'");
        }
    }
    if (!have_l || !have_n || !have_t)
        throw ParseError("line 2: header must carry L=, N= and t=");

    WaveState state;
    try {
        state.grid = make_grid(length, points);
    } catch (const ConfigError& err) {
        throw ParseError(std::string("line 2: ") + err.what());
    }
    state.time = time;
    state.amplitudes.reserve(points);

    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = detail::trim(line);
        if (row.empty()) continue;
        const auto cols = detail::split(row, ',');
        if (cols.size() != 3)
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 columns (x,re,im), got " +
                             std::to_string(cols.size()));
        const std::string where = "line " + std::to_string(line_no);
        detail::parse_double(cols[0], where);  // x is informational
        state.amplitudes.emplace_back(detail::parse_double(cols[1], where),
                                      detail::parse_double(cols[2], where));
    }
    if (state.amplitudes.size() != points)
        throw ParseError("snapshot declares N=" + std::to_string(points) + " but has " +
                         std::to_string(state.amplitudes.size()) + " data rows");
    return state;
}

// --- evolution matrix --------------------------------------------------------
//
//   # satnls-evolution v1 rows=<R> cols=<N> L=<decimal> tau=<decimal>
//   R lines of N comma-separated magnitudes

inline void write_evolution(const std::vector<std::vector<double>>& rows,
                            const GridSpec& grid, double tau,
                            const std::filesystem::path& path) {
    if (rows.empty())
        throw ConfigError("write_evolution: no rows to write");
    for (const auto& row : rows)
        if (row.size() != rows.front().size())
            throw ConfigError("write_evolution: ragged rows (" +
                              std::to_string(row.size()) + " vs " +
                              std::to_string(rows.front().size()) + ")");

    std::ofstream out = detail::open_out(path);
    out << "# satnls-evolution v1 rows=" << rows.size() << " cols="
        << rows.front().size() << " L=" << format_double(grid.length)
        << " tau=" << format_double(tau) << "\n";
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << format_double(row[j]);
        }
        out << '\n';
    }
}

// --- diagnostics log ---------------------------------------------------------

inline void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                                  const std::filesystem::path& path) {
    std::ofstream out = detail::open_out(path);
    out << "step,time,norm,peak_amplitude,peak_index\n";
    for (const DiagnosticsRecord& r : records) {
        out << r.step_index << ',' << format_double(r.time) << ','
            << format_double(r.norm) << ',' << format_double(r.peak_amplitude)
            << ',' << r.peak_index << '\n';
    }
}

// --- run config ---------------------------------------------------------------
//
// key=value lines, '#' starts a comment. Required: scheme, S, tau, T, L, N,
// solitons. Optional: snapshot_stride, splitting, norm_integrand.

inline std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out << "scheme=" << (config.scheme == Scheme::SplitStep ? "splitstep" : "fd") << "\n";
    out << "S=" << format_double(config.saturation.value) << "\n";
    out << "tau=" << format_double(config.tau) << "\n";
    out << "T=" << format_double(config.total_time) << "\n";
    out << "L=" << format_double(config.grid.length) << "\n";
    out << "N=" << config.grid.points << "\n";
    out << "solitons=";
    for (std::size_t i = 0; i < config.solitons.size(); ++i) {
        if (i) out << ';';
        out << format_double(config.solitons[i].offset) << ':'
            << format_double(config.solitons[i].velocity);
    }
    out << "\n";
    out << "snapshot_stride=" << config.snapshot_stride << "\n";
    out << "splitting=" << (config.splitting == Splitting::Lie ? "lie" : "strang") << "\n";
    out << "norm_integrand="
        << (config.norm_integrand == NormIntegrand::Abs2 ? "abs2" : "abs") << "\n";
    return out.str();
}

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    bool seen[7] = {};  // scheme, S, tau, T, L, N, solitons
    double length = 0.0;
    std::size_t points = 0;
    bool seen_stride = false, seen_splitting = false, seen_integrand = false;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = line;
        if (const std::size_t hash = row.find('#'); hash != std::string_view::npos)
            row = row.substr(0, hash);
        row = detail::trim(row);
        if (row.empty()) continue;

        const std::size_t eq = row.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key=value, got '" + std::string(row) + "'");
        const std::string key(detail::trim(row.substr(0, eq)));
        const std::string_view value = detail::trim(row.substr(eq + 1));
        const std::string where = "config key '" + key + "'";

        auto mark = [&](int slot, bool& flag) {
            if (slot >= 0 ? seen[slot] : flag)
                throw ConfigError(where + " appears more than once");
            if (slot >= 0) seen[slot] = true; else flag = true;
        };
        bool unused = false;

        if (key == "scheme") {
            mark(0, unused);
            if (value == "splitstep") config.scheme = Scheme::SplitStep;
            else if (value == "fd") config.scheme = Scheme::FiniteDifference;
            else throw ConfigError(where + ": expected 'splitstep' or 'fd', got '" +
                                   std::string(value) + "'");
        } else if (key == "S") {
            mark(1, unused);
            config.saturation.value = detail::parse_double(value, where);
        } else if (key == "tau") {
            mark(2, unused);
            config.tau = detail::parse_double(value, where);
        } else if (key == "T") {
            mark(3, unused);
            config.total_time = detail::parse_double(value, where);
        } else if (key == "L") {
            mark(4, unused);
            length = detail::parse_double(value, where);
        } else if (key == "N") {
            mark(5, unused);
            points = detail::parse_size(value, where);
        } else if (key == "solitons") {
            mark(6, unused);
            for (std::string_view pair : detail::split(value, ';')) {
                pair = detail::trim(pair);
                const auto parts = detail::split(pair, ':');
                if (parts.size() != 2)
                    throw ConfigError(where + ": expected offset:velocity, got '" +
                                      std::string(pair) + "'");
                config.solitons.push_back(
                    SolitonSpec{detail::parse_double(detail::trim(parts[0]), where),
                                detail::parse_double(detail::trim(parts[1]), where)});
            }
        } else if (key == "snapshot_stride") {
            mark(-1, seen_stride);
            config.snapshot_stride = detail::parse_size(value, where);
        } else if (key == "splitting") {
            mark(-1, seen_splitting);
            if (value == "lie") config.splitting = Splitting::Lie;
            else if (value == "strang") config.splitting = Splitting::Strang;
            else throw ConfigError(where + ": expected 'lie' or 'strang', got '" +
                                   std::string(value) + "'");
        } else if (key == "norm_integrand") {
            mark(-1, seen_integrand);
            if (value == "abs2") config.norm_integrand = NormIntegrand::Abs2;
            else if (value == "abs") config.norm_integrand = NormIntegrand::Abs;
            else throw ConfigError(where + ": expected 'abs2' or 'abs', got '" +
                                   std::string(value) + "'");
        } else {
            throw ConfigError("unknown config key '" + key + "' (line " +
                              std::to_string(line_no) + ")");
        }
    }

    static constexpr const char* kRequired[7] = {"scheme", "S", "tau", "T",
                                                 "L", "N", "solitons"};
    for (int i = 0; i < 7; ++i)
        if (!seen[i])
            throw ConfigError(std::string("missing required config key '") +
                              kRequired[i] + "'");

    config.grid = make_grid(length, points);
    validate(config);
    return config;
}

inline RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const ConfigError& err) {
        throw ConfigError(path.string() + ": " + err.what());
    }
}

// --- run manifest --------------------------------------------------------------

/// Written into the output directory as `manifest`: tool version, stability
/// preflight result and the resolved config.
inline void write_manifest(const RunConfig& config,
                           const std::optional<StabilityReport>& preflight,
                           const std::filesystem::path& dir,
                           std::string_view version) {
    std::ofstream out = detail::open_out(dir / "manifest");
    out << "# satnls-manifest v1\n";
    out << "version=" << version << "\n";
    if (preflight) {
        out << "stability_preflight=" << (preflight->stable ? "stable" : "unstable")
            << " tau=" << format_double(preflight->tau)
            << " threshold=" << format_double(preflight->threshold)
            << " worst_max_magnitude=" << format_double(preflight->worst_max_magnitude)
            << "\n";
        out << "stability_note=linearized Von Neumann analysis; the nonlinear term"
               " is assumed negligible\n";
    } else {
        out << "stability_preflight=not-applicable (spectral scheme)\n";
    }
    out << "output_dir=" << config.output_dir << "\n";
    out << "# resolved config\n";
    out << serialize_config(config);
}

}  // namespace satnls
