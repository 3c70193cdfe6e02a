#pragma once

#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "rydpol/errors.hpp"
#include "rydpol/harness/config.hpp"
#include "rydpol/harness/scenarios.hpp"

namespace rydpol::harness {

/// Entry point shared by the rydpol executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conditional phase and feasibility of colliding Rydberg slow-light polaritons"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_name;
    std::optional<double> margin_factor;
    std::optional<int> grid_points;
    std::string scan_spec;
    std::optional<double> time;
    bool with_homogeneity = false;

    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "key = value medium description (SI units)");
        if (config_required) opt->required();
        sub->add_option("--out", out_path, "output path (collide: file prefix)");
        sub->add_option("--format", format_name, "output file format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--margin-factor", margin_factor, "factor for '<<' feasibility checks")
            ->check(CLI::Range(1.0, 1e300));
        sub->add_option("--grid", grid_points, "grid points per axis")->check(CLI::Range(2, 1 << 16));
    };

    auto* validate = app.add_subcommand("validate", "feasibility report; exit 2 when infeasible");
    add_common(validate, true);
    auto* phase = app.add_subcommand("phase", "conditional phase: closed form, quadrature and bound");
    add_common(phase, true);
    auto* collide_cmd = app.add_subcommand("collide", "two-particle wavefunction, homogeneity, Schmidt spectrum");
    add_common(collide_cmd, true);
    collide_cmd->add_option("--time", time, "evaluation time [s] (default: L/v)")->check(CLI::NonNegativeNumber);
    auto* scan = app.add_subcommand("scan", "sweep one medium field");
    add_common(scan, true);
    scan->add_option("--scan", scan_spec, "FIELD:MIN:MAX:STEPS[:log]")->required();
    scan->add_flag("--with-homogeneity", with_homogeneity, "evaluate the collision grid for every row");
    auto* repro = app.add_subcommand("paper-repro", "worked example with expected windows");
    add_common(repro, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        RunConfig run;
        if (!config_path.empty()) run = load_config(config_path);
        if (margin_factor) run.margin_factor = *margin_factor;
        if (grid_points) run.grid_points = *grid_points;
        run.out_path = out_path;
        run.format = scan->parsed() ? OutputFormat::csv : OutputFormat::json;
        if (!format_name.empty()) run.format = formats.at(format_name);

        if (validate->parsed()) {
            try {
                return run_validate(run, out);
            } catch (const SlowLightRegimeError& e) {
                err << "infeasible: " << e.what() << '\n';
                return exit_infeasible;
            }
        }
        if (phase->parsed()) return run_phase(run, out);
        if (collide_cmd->parsed()) return run_collide(run, out, time);
        if (scan->parsed()) {
            run.scan = parse_scan_axis(scan_spec);
            return run_scan(run, out, with_homogeneity);
        }
        if (repro->parsed()) return run_paper_repro(run, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace rydpol::harness
