#pragma once

// Scenario drivers behind the CLI subcommands. Each returns the process exit
// code: 0 success or feasible, 2 infeasible, 1 usage or configuration error
// (the latter raised as exceptions and mapped by the CLI).

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rydpol/collision.hpp"
#include "rydpol/eit.hpp"
#include "rydpol/harness/config.hpp"
#include "rydpol/harness/format.hpp"
#include "rydpol/potential.hpp"

namespace rydpol::harness {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_infeasible = 2;

// ---------------------------------------------------------------- validate

inline Json report_to_json(const FeasibilityReport& report, double margin_factor) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"name", c.name},
                              {"lhs", json_number(c.lhs)},
                              {"rhs", json_number(c.rhs)},
                              {"margin_ratio", json_number(c.margin_ratio)},
                              {"threshold", json_number(c.threshold)},
                              {"pass", c.pass}});
    }
    return Json{{"margin_factor", json_number(margin_factor)}, {"checks", checks}, {"overall_pass", report.overall_pass}};
}

inline void report_to_csv(std::ostream& out, const FeasibilityReport& report) {
    CsvWriter csv(out);
    csv.header({"name", "lhs", "rhs", "margin_ratio", "threshold", "pass"});
    for (const auto& c : report.checks) {
        csv.row({c.name, format_number(c.lhs), format_number(c.rhs), format_number(c.margin_ratio),
                 format_number(c.threshold), c.pass ? "true" : "false"});
    }
}

inline void report_to_table(std::ostream& out, const FeasibilityReport& report) {
    out << std::left << std::setw(24) << "check" << std::setw(20) << "lhs" << std::setw(20) << "rhs"
        << std::setw(20) << "margin_ratio" << std::setw(12) << "threshold" << "pass\n";
    for (const auto& c : report.checks) {
        out << std::left << std::setw(24) << c.name << std::setw(20) << format_number(c.lhs) << std::setw(20)
            << format_number(c.rhs) << std::setw(20) << format_number(c.margin_ratio) << std::setw(12)
            << format_number(c.threshold) << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    out << "overall: " << (report.overall_pass ? "PASS" : "FAIL") << '\n';
}

inline int run_validate(const RunConfig& run, std::ostream& out) {
    const MediumConfig cfg = build_medium(run.medium);
    const DerivedEit der = derive_eit(cfg);
    const FeasibilityReport report = feasibility(cfg, der, run.margin_factor);
    report_to_table(out, report);
    if (!run.out_path.empty()) {
        auto file = open_output(run.out_path);
        if (run.format == OutputFormat::csv) report_to_csv(file, report);
        else write_json(file, report_to_json(report, run.margin_factor));
    }
    return report.overall_pass ? exit_ok : exit_infeasible;
}

// ------------------------------------------------------------------- phase

inline Json phase_summary(const MediumConfig& cfg, const DerivedEit& der) {
    const PhaseResult phase = compare_phase(cfg, der);
    return Json{{"v", json_number(der.v)},
                {"sin2_theta", json_number(der.sin2_theta)},
                {"interaction_constant", json_number(cfg.rydberg.interaction_constant)},
                {"phi_closed", json_number(phase.phi_closed)},
                {"phi_quadrature", json_number(phase.phi_quadrature)},
                {"rel_difference", json_number(phase.rel_difference)},
                {"phi_bound", json_number(phase_bound(der, cfg))},
                {"fidelity", json_number(fidelity(cfg, der))}};
}

inline void summary_to_table(std::ostream& out, const Json& doc) {
    for (const auto& [key, value] : doc.items()) {
        out << std::left << std::setw(24) << key;
        if (value.is_number_float()) out << format_number(value.get<double>());
        else if (value.is_null()) out << "nan";
        else out << value.dump();
        out << '\n';
    }
}

inline void summary_to_csv(std::ostream& out, const Json& doc) {
    CsvWriter csv(out);
    csv.header({"quantity", "value"});
    for (const auto& [key, value] : doc.items()) {
        if (value.is_number_float()) csv.row({key, format_number(value.get<double>())});
        else if (value.is_null()) csv.row({key, "nan"});
        else if (!value.is_structured()) csv.row({key, value.dump()});
    }
}

inline void emit_summary(const RunConfig& run, std::ostream& out, const Json& doc) {
    summary_to_table(out, doc);
    if (run.out_path.empty()) return;
    auto file = open_output(run.out_path);
    if (run.format == OutputFormat::csv) summary_to_csv(file, doc);
    else write_json(file, doc);
}

inline int run_phase(const RunConfig& run, std::ostream& out) {
    const MediumConfig cfg = build_medium(run.medium);
    const DerivedEit der = derive_eit(cfg);
    emit_summary(run, out, phase_summary(cfg, der));
    return exit_ok;
}

// ----------------------------------------------------------------- collide

struct CollisionOutcome {
    TwoParticleGrid grid;
    double homogeneity = 0.0;
    bool zero_phase = false;
};

inline CollisionOutcome collide(const MediumConfig& cfg, const DerivedEit& der, int grid_points,
                                std::optional<double> time = std::nullopt) {
    const auto [env1, env2] = default_envelopes(cfg, der);
    const std::vector<double> z = default_grid(cfg, env1, env2, grid_points);
    CollisionOutcome outcome;
    outcome.grid = evolve_two_particle(env1, env2, time.value_or(der.t_out), z, z, der,
                                       cfg.rydberg.interaction_constant, cfg.w);
    outcome.zero_phase = std::all_of(outcome.grid.amplitude.begin(), outcome.grid.amplitude.end(),
                                     [](const std::complex<double>& a) { return a.imag() == 0.0 && a.real() >= 0.0; });
    outcome.homogeneity = homogeneity_metric(outcome.grid);
    return outcome;
}

inline constexpr int plot_points = 401;
inline constexpr int reported_schmidt_values = 16;

inline int run_collide(const RunConfig& run, std::ostream& out, std::optional<double> time = std::nullopt) {
    const MediumConfig cfg = build_medium(run.medium);
    const DerivedEit der = derive_eit(cfg);
    const CollisionOutcome outcome = collide(cfg, der, run.grid_points, time);
    const std::vector<double> spectrum = schmidt_spectrum(outcome.grid);

    const std::string prefix = run.out_path.empty() ? std::string("collide") : run.out_path;
    {
        auto file = open_output(prefix + "_grid.csv");
        CsvWriter csv(file);
        csv.header({"z1", "z2", "re", "im"});
        const auto& g = outcome.grid;
        for (std::size_t i = 0; i < g.z1.size(); ++i)
            for (std::size_t j = 0; j < g.z2.size(); ++j)
                csv.row({format_number(g.z1[i]), format_number(g.z2[j]), format_number(g.at(i, j).real()),
                         format_number(g.at(i, j).imag())});
    }
    {
        const auto& g = outcome.grid;
        auto axis = [](const std::vector<double>& z) {
            return Json{{"min", json_number(z.front())}, {"max", json_number(z.back())}, {"points", z.size()}};
        };
        Json header{{"columns", Json::array({"z1", "z2", "re", "im"})},
                    {"order", "z1-major"},
                    {"time", json_number(g.time)},
                    {"z1", axis(g.z1)},
                    {"z2", axis(g.z2)},
                    {"parameters",
                     Json{{"rho", json_number(cfg.rho)},
                          {"L", json_number(cfg.L)},
                          {"lambda", json_number(cfg.lambda)},
                          {"gamma_ge", json_number(cfg.gamma_ge)},
                          {"Omega", json_number(cfg.Omega)},
                          {"w", json_number(cfg.w)},
                          {"T", json_number(cfg.T)},
                          {"n", cfg.rydberg.n},
                          {"q", cfg.rydberg.q},
                          {"gamma_d", json_number(cfg.rydberg.gamma_d)}}}};
        auto file = open_output(prefix + "_grid.header.json");
        write_json(file, header);
    }
    {
        auto file = open_output(prefix + "_potential.csv");
        CsvWriter csv(file);
        csv.header({"zeta", "g"});
        for (const auto& [zeta, g] : reduced_potential_curve(-4.0, 4.0, plot_points))
            csv.row({format_number(zeta), format_number(g)});
    }
    {
        auto file = open_output(prefix + "_phase.csv");
        CsvWriter csv(file);
        csv.header({"tau", "phi_reduced"});
        for (const auto& [tau, phi] : crossing_phase_curve(cfg, der, plot_points))
            csv.row({format_number(tau), format_number(phi)});
    }

    Json values = Json::array();
    for (std::size_t k = 0; k < spectrum.size() && k < static_cast<std::size_t>(reported_schmidt_values); ++k)
        values.push_back(json_number(spectrum[k]));
    Json summary{{"time", json_number(outcome.grid.time)},
                 {"grid_points", run.grid_points},
                 {"phi_closed", json_number(closed_form_phase(der, cfg.rydberg.interaction_constant, cfg.w))},
                 {"homogeneity", json_number(outcome.homogeneity)},
                 {"zero_phase", outcome.zero_phase},
                 {"schmidt_number", json_number(schmidt_number(spectrum))},
                 {"schmidt_spectrum", values}};
    {
        auto file = open_output(prefix + "_summary.json");
        write_json(file, summary);
    }
    summary_to_table(out, summary);
    return exit_ok;
}

// -------------------------------------------------------------------- scan

struct ScanRow {
    double swept = 0.0;
    double v = std::numeric_limits<double>::quiet_NaN();
    double delta_omega = std::numeric_limits<double>::quiet_NaN();
    double phi_closed = std::numeric_limits<double>::quiet_NaN();
    double phi_bound = std::numeric_limits<double>::quiet_NaN();
    double fidelity = std::numeric_limits<double>::quiet_NaN();
    bool feasible = false;
    double homogeneity = std::numeric_limits<double>::quiet_NaN();
};

inline std::string field_unit(const std::string& field) {
    if (field == "rho") return "m^-3";
    if (field == "L" || field == "lambda" || field == "w") return "m";
    if (field == "gamma_ge" || field == "gamma_d") return "1/s";
    if (field == "Omega") return "rad/s";
    if (field == "T") return "s";
    return "1";
}

inline std::vector<std::string> scan_columns(const ScanAxis& axis) {
    return {axis.field + " [" + field_unit(axis.field) + "]",
            "v [m/s]",
            "delta_omega [rad/s]",
            "phi_closed [rad]",
            "phi_bound [rad]",
            "fidelity [1]",
            "feasible",
            "homogeneity [1]"};
}

/// One row per axis value, in axis order. A step whose medium cannot be
/// built or derived is kept as an infeasible row of NaNs.
inline std::vector<ScanRow> compute_scan(const RunConfig& run, const ScanAxis& axis, bool with_homogeneity = false) {
    std::vector<ScanRow> rows;
    for (const double value : axis.values()) {
        ScanRow row;
        row.swept = value;
        try {
            MediumParams params = run.medium;
            set_medium_field(params, axis.field, value);
            const MediumConfig cfg = build_medium(params);
            const DerivedEit der = derive_eit(cfg);
            const double C = cfg.rydberg.interaction_constant;
            row.v = der.v;
            row.delta_omega = der.delta_omega;
            row.phi_closed = closed_form_phase(der, C, cfg.w);
            row.phi_bound = phase_bound(der, cfg);
            row.fidelity = fidelity(cfg, der);
            row.feasible = feasibility(cfg, der, run.margin_factor).overall_pass;
            if (with_homogeneity) row.homogeneity = collide(cfg, der, run.grid_points).homogeneity;
        } catch (const std::exception&) {
            row.feasible = false;
        }
        rows.push_back(row);
    }
    return rows;
}

inline void write_scan(std::ostream& out, const ScanAxis& axis, const std::vector<ScanRow>& rows, OutputFormat format) {
    const auto columns = scan_columns(axis);
    if (format == OutputFormat::csv) {
        CsvWriter csv(out);
        csv.header(columns);
        for (const auto& r : rows) {
            csv.row({format_number(r.swept), format_number(r.v), format_number(r.delta_omega),
                     format_number(r.phi_closed), format_number(r.phi_bound), format_number(r.fidelity),
                     r.feasible ? "true" : "false", format_number(r.homogeneity)});
        }
        return;
    }
    Json doc{{"field", axis.field},
             {"min", json_number(axis.min)},
             {"max", json_number(axis.max)},
             {"steps", axis.steps},
             {"spacing", axis.log ? "log" : "linear"},
             {"columns", columns}};
    Json data = Json::array();
    for (const auto& r : rows) {
        data.push_back(Json{{"value", json_number(r.swept)},
                            {"v", json_number(r.v)},
                            {"delta_omega", json_number(r.delta_omega)},
                            {"phi_closed", json_number(r.phi_closed)},
                            {"phi_bound", json_number(r.phi_bound)},
                            {"fidelity", json_number(r.fidelity)},
                            {"feasible", r.feasible},
                            {"homogeneity", json_number(r.homogeneity)}});
    }
    doc["rows"] = data;
    write_json(out, doc);
}

inline int run_scan(const RunConfig& run, std::ostream& out, bool with_homogeneity = false) {
    if (!run.scan) throw ConfigError("scan needs --scan FIELD:MIN:MAX:STEPS[:log]");
    const auto rows = compute_scan(run, *run.scan, with_homogeneity);
    if (run.out_path.empty()) {
        write_scan(out, *run.scan, rows, run.format);
    } else {
        auto file = open_output(run.out_path);
        write_scan(file, *run.scan, rows, run.format);
        out << "wrote " << rows.size() << " rows to " << run.out_path << '\n';
    }
    return exit_ok;
}

// ------------------------------------------------------------- paper-repro

struct ExpectedWindow {
    std::string quantity;
    double value = 0.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool pass() const { return value >= lo && value <= hi; }
};

struct PaperRepro {
    Json summary;
    std::vector<ExpectedWindow> windows;
    bool feasible = false;

    bool pass() const {
        return feasible && std::all_of(windows.begin(), windows.end(), [](const auto& w) { return w.pass(); });
    }
};

inline PaperRepro paper_repro(const RunConfig& run) {
    const MediumConfig cfg = build_medium(run.medium);
    const DerivedEit der = derive_eit(cfg);
    const FeasibilityReport report = feasibility(cfg, der, run.margin_factor);
    const double homogeneity = collide(cfg, der, run.grid_points).homogeneity;

    PaperRepro repro;
    repro.summary = phase_summary(cfg, der);
    repro.summary["kappa0"] = json_number(der.kappa0);
    repro.summary["delta_omega"] = json_number(der.delta_omega);
    repro.summary["peak_shift"] = json_number(peak_shift(cfg.rydberg.interaction_constant, cfg.w));
    repro.summary["t_out"] = json_number(der.t_out);
    repro.summary["homogeneity"] = json_number(homogeneity);
    repro.summary["feasible"] = report.overall_pass;
    repro.feasible = report.overall_pass;

    const double phi = closed_form_phase(der, cfg.rydberg.interaction_constant, cfg.w);
    repro.windows = {
        {"v", der.v, 3.5, 5.0},
        {"fidelity", fidelity(cfg, der), 0.95},
        {"phi_closed", phi, 2.4, 3.4},
    };
    Json checks = Json::array();
    for (const auto& w : repro.windows) {
        checks.push_back(Json{{"quantity", w.quantity},
                              {"value", json_number(w.value)},
                              {"lo", json_number(w.lo)},
                              {"hi", json_number(w.hi)},
                              {"pass", w.pass()}});
    }
    repro.summary["expected"] = checks;
    repro.summary["feasibility"] = report_to_json(report, run.margin_factor);
    return repro;
}

inline int run_paper_repro(const RunConfig& run, std::ostream& out) {
    const PaperRepro repro = paper_repro(run);
    Json flat = repro.summary;
    flat.erase("expected");
    flat.erase("feasibility");
    summary_to_table(out, flat);
    for (const auto& w : repro.windows) {
        out << std::left << std::setw(24) << ("expect " + w.quantity) << format_number(w.value) << " in ["
            << format_number(w.lo) << ", " << format_number(w.hi) << "] " << (w.pass() ? "PASS" : "FAIL") << '\n';
    }
    if (!run.out_path.empty()) {
        auto file = open_output(run.out_path);
        if (run.format == OutputFormat::csv) summary_to_csv(file, repro.summary);
        else write_json(file, repro.summary);
    }
    return repro.pass() ? exit_ok : exit_infeasible;
}

} // namespace rydpol::harness
