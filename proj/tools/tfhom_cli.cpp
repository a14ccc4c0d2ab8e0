// Command-line front end. Talks to the toolkit only through tfhom.h: flags and
// an optional JSON config file are merged into one JSON object and handed to
// tfh_command_run.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tfhom/tfhom.h"

namespace {

struct Flags {
    std::string config_file;
    std::optional<std::string> alpha, eps, dt, final_time, theta, z, cg_tol;
    std::optional<int> grid_n, cell_n, jobs;
    std::optional<std::string> field, initial, out, run;
    std::vector<int> snapshots;
    std::vector<std::string> report_times;
    bool paper_scale = false;
    bool write_chi = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_file, "JSON configuration file; flags override its keys");
    cmd->add_option("--alpha", f.alpha, "fractional order in (0,1)");
    cmd->add_option("--eps", f.eps, "period, e.g. 1/8; comma-separated list for study");
    cmd->add_option("--grid-n", f.grid_n, "cells per side of the physical grid (power of two)");
    cmd->add_option("--cell-n", f.cell_n, "cells per side of the unit-cell grid (power of two)");
    cmd->add_option("--dt", f.dt, "time step, e.g. 1/100");
    cmd->add_option("--T", f.final_time, "final time");
    cmd->add_option("--field", f.field, "smooth-low | smooth-high | piecewise-low | piecewise-high | constant:<c>");
    cmd->add_option("--initial", f.initial, "smooth | rough | sine | zero");
    cmd->add_option("--theta", f.theta, "use the cut-off corrector with this threshold time");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--snapshots", f.snapshots, "1-based step indices to export (step 1 is t = 0)")->delimiter(',');
    cmd->add_option("--report-times", f.report_times, "times of the error table rows")->delimiter(',');
    cmd->add_option("--jobs", f.jobs, "concurrent eps runs in a study");
    cmd->add_option("--cg-tol", f.cg_tol, "relative residual tolerance of the time-step solves");
    cmd->add_flag("--paper-scale", f.paper_scale, "use the 512 x 512 physical grid");
}

nlohmann::json merge(const Flags& f) {
    nlohmann::json j = nlohmann::json::object();
    if (!f.config_file.empty()) {
        std::ifstream in(f.config_file);
        if (!in) throw std::runtime_error("cannot read config file " + f.config_file);
        j = nlohmann::json::parse(in);
    }
    auto set = [&j](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    set("alpha", f.alpha);
    set("eps", f.eps);
    set("dt", f.dt);
    set("T", f.final_time);
    set("theta", f.theta);
    set("z", f.z);
    set("cg_tol", f.cg_tol);
    set("grid_n", f.grid_n);
    set("cell_n", f.cell_n);
    set("jobs", f.jobs);
    set("field", f.field);
    set("initial", f.initial);
    set("out", f.out);
    set("run", f.run);
    if (!f.snapshots.empty()) j["snapshots"] = f.snapshots;
    if (!f.report_times.empty()) j["report_times"] = f.report_times;
    if (f.paper_scale) j["paper_scale"] = true;
    if (f.write_chi) j["write_chi"] = true;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic homogenization of time-fractional diffusion: cell problems, L1 time stepping, "
                 "first-order correctors and convergence studies"};
    app.set_version_flag("--version", std::string(tfh_version()));
    app.require_subcommand(1);

    Flags flags;
    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"cell", "solve the cell problems and print the effective tensor"},
        {"fine", "run the fine-scale problem"},
        {"homogenize", "run the homogenized problem"},
        {"corrector", "assemble the first-order approximation U1"},
        {"study", "errors of U1 against the fine solution over a list of eps, with fitted rates"},
        {"snapshots", "export nodal CSV and SVG heatmaps of selected steps"},
        {"oracle", "compare the L1 scheme with the Mittag-Leffler decay of the first eigenmode"},
    };
    for (const auto& s : subs) {
        auto* cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, flags);
        if (std::string(s.name) == "cell") cmd->add_flag("--write-chi", flags.write_chi, "write chi_1, chi_2 as CSV");
        if (std::string(s.name) == "snapshots") cmd->add_option("--run", flags.run, "fine | homogenized | corrector");
        if (std::string(s.name) == "oracle") cmd->add_option("--z", flags.z, "only evaluate E_alpha(z)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string command;
    for (auto* sub : app.get_subcommands()) command = sub->get_name();

    std::string config;
    try {
        config = merge(flags).dump();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const tfh_status status = tfh_command_run(command.c_str(), config.c_str());
    if (status != TFH_OK) {
        std::cerr << "error: " << tfh_last_error() << "\n";
    }
    return tfh_exit_code(status);
}
