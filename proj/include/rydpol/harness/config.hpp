#pragma once

// Run configuration: a flat "key = value" document in SI units.
//
//   rho      = 1e20     # atomic density [m^-3]
//   L        = 1e-4     # medium length [m]
//   lambda   = 5e-7     # probe wavelength [m]
//   gamma_ge = 1e7      # g-e coherence decay [1/s]
//   Omega    = 1.6e7    # drive Rabi frequency [rad/s]
//   w        = 3e-5     # transverse width [m]
//   T        = 7e-6     # pulse duration [s] (optional: T v/L = 0.3)
//   n        = 25       # principal quantum number
//   q        = 24       # parabolic quantum number, or "n-1"
//   gamma_d  = 2e3      # Rydberg decay rate [1/s]
//   margin_factor = 10  # optional, factor for "<<" checks
//   grid_points   = 512 # optional, points per axis for collide

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rydpol/collision.hpp"
#include "rydpol/eit.hpp"
#include "rydpol/rydberg.hpp"

namespace rydpol::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MediumParams {
    double rho = 0.0;
    double L = 0.0;
    double lambda = 0.0;
    double gamma_ge = 0.0;
    double Omega = 0.0;
    double w = 0.0;
    std::optional<double> T;
    int n = 1;
    int q = 0;
    bool q_tied_to_n = false; // q = n - 1
    double gamma_d = 0.0;

    /// Cold alkali ensemble of the worked example.
    static MediumParams paper() {
        MediumParams p;
        p.rho = 1e20;
        p.L = 1e-4;
        p.lambda = 5e-7;
        p.gamma_ge = 1e7;
        p.Omega = 1.6e7;
        p.w = 3e-5;
        p.n = 25;
        p.q = 24;
        p.q_tied_to_n = true;
        p.gamma_d = 2e3;
        return p;
    }
};

enum class OutputFormat { csv, json };

struct ScanAxis {
    std::string field;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
    bool log = false;

    std::vector<double> values() const {
        std::vector<double> out(steps);
        for (int i = 0; i < steps; ++i) {
            const double f = static_cast<double>(i) / (steps - 1);
            out[i] = log ? min * std::pow(max / min, f) : min + (max - min) * f;
        }
        if (steps > 1) {
            out.front() = min;
            out.back() = max;
        }
        return out;
    }
};

struct RunConfig {
    MediumParams medium = MediumParams::paper();
    double margin_factor = default_margin_factor;
    int grid_points = default_grid_points;
    std::optional<ScanAxis> scan;
    OutputFormat format = OutputFormat::json;
    std::string out_path;
};

inline const std::vector<std::string>& medium_fields() {
    static const std::vector<std::string> fields = {"rho", "L", "lambda", "gamma_ge", "Omega",
                                                    "w",   "T", "n",      "q",        "gamma_d"};
    return fields;
}

inline bool is_medium_field(std::string_view name) {
    const auto& f = medium_fields();
    return std::find(f.begin(), f.end(), name) != f.end();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::optional<double> to_double(std::string_view s) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

inline int to_quantum_number(double value, std::string_view key) {
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-9 || std::abs(rounded) > 1e6)
        throw ConfigError("field '" + std::string(key) + "' must be an integer");
    return static_cast<int>(rounded);
}

} // namespace detail

/// Assigns a medium field by name; used by the parser and by scans.
inline void set_medium_field(MediumParams& p, std::string_view key, double value) {
    if (key == "rho") p.rho = value;
    else if (key == "L") p.L = value;
    else if (key == "lambda") p.lambda = value;
    else if (key == "gamma_ge") p.gamma_ge = value;
    else if (key == "Omega") p.Omega = value;
    else if (key == "w") p.w = value;
    else if (key == "T") p.T = value;
    else if (key == "n") p.n = detail::to_quantum_number(value, key);
    else if (key == "q") {
        p.q = detail::to_quantum_number(value, key);
        p.q_tied_to_n = false;
    } else if (key == "gamma_d") p.gamma_d = value;
    else throw ConfigError("unknown medium field '" + std::string(key) + "'");
}

inline RunConfig parse_config(std::istream& in) {
    static const std::vector<std::string> required = {"rho", "L", "lambda", "gamma_ge", "Omega",
                                                      "w",   "n", "q",      "gamma_d"};
    RunConfig cfg;
    cfg.medium = MediumParams{};
    std::map<std::string, int> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = detail::trim(text);
        if (text.empty()) continue;

        const auto eq = text.find('=');
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key(detail::trim(text.substr(0, eq)));
        const std::string_view raw = detail::trim(text.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + "missing key before '='");
        if (raw.empty()) throw ConfigError(where + "missing value for '" + key + "'");
        if (seen.count(key)) {
            throw ConfigError(where + "duplicate key '" + key + "' (first set on line " +
                              std::to_string(seen[key]) + ")");
        }
        seen[key] = lineno;

        if (key == "q" && raw == "n-1") {
            cfg.medium.q_tied_to_n = true;
            continue;
        }
        if (key != "margin_factor" && key != "grid_points" && !is_medium_field(key)) {
            throw ConfigError(where + "unknown key '" + key + "'");
        }
        const auto value = detail::to_double(raw);
        if (!value) throw ConfigError(where + "value of '" + key + "' is not a finite number: '" + std::string(raw) + "'");

        try {
            if (key == "margin_factor") {
                if (!(*value >= 1.0)) throw ConfigError("margin_factor must be >= 1");
                cfg.margin_factor = *value;
            } else if (key == "grid_points") {
                const int points = detail::to_quantum_number(*value, key);
                if (points < 2) throw ConfigError("grid_points must be >= 2");
                cfg.grid_points = points;
            } else if (is_medium_field(key)) {
                set_medium_field(cfg.medium, key, *value);
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    for (const auto& key : required)
        if (!seen.count(key)) throw ConfigError("missing required key '" + key + "'");
    return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return parse_config(in);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

/// "FIELD:MIN:MAX:STEPS[:log]"
inline ScanAxis parse_scan_axis(const std::string& spec) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(spec);
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() < 4 || parts.size() > 5)
        throw ConfigError("--scan expects FIELD:MIN:MAX:STEPS[:log], got '" + spec + "'");

    ScanAxis axis;
    axis.field = parts[0];
    if (!is_medium_field(axis.field)) throw ConfigError("--scan: '" + axis.field + "' is not a medium field");
    const auto lo = detail::to_double(parts[1]);
    const auto hi = detail::to_double(parts[2]);
    const auto steps = detail::to_double(parts[3]);
    if (!lo || !hi || !steps) throw ConfigError("--scan: MIN, MAX and STEPS must be numbers");
    axis.min = *lo;
    axis.max = *hi;
    axis.steps = detail::to_quantum_number(*steps, "STEPS");
    if (axis.steps < 2) throw ConfigError("--scan: STEPS must be >= 2");
    if (parts.size() == 5) {
        if (parts[4] == "log") axis.log = true;
        else if (parts[4] != "lin" && parts[4] != "linear") throw ConfigError("--scan: spacing must be 'log' or 'lin'");
    }
    if (axis.log && !(axis.min > 0.0 && axis.max > 0.0)) throw ConfigError("--scan: log spacing needs positive bounds");
    return axis;
}

/// Concrete medium from parsed parameters; fills the default pulse duration.
inline MediumConfig build_medium(const MediumParams& p) {
    const int q = p.q_tied_to_n ? p.n - 1 : p.q;
    MediumConfig cfg;
    cfg.rho = p.rho;
    cfg.L = p.L;
    cfg.lambda = p.lambda;
    cfg.gamma_ge = p.gamma_ge;
    cfg.Omega = p.Omega;
    cfg.w = p.w;
    cfg.rydberg = make_rydberg(p.n, q, p.gamma_d);
    if (p.T) {
        cfg.T = *p.T;
    } else {
        cfg.T = 1.0; // placeholder until v is known
        cfg.T = default_pulse_duration(cfg.L, derive_eit(cfg).v);
    }
    return cfg;
}

} // namespace rydpol::harness
