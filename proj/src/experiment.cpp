#include "tfhom/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>

#include "tfhom/corrector.hpp"
#include "tfhom/error.hpp"
#include "tfhom/svg.hpp"

namespace tfhom {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string short_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

long long reciprocal(double eps) { return std::llround(1.0 / eps); }

std::string eps_label(double eps) { return "1/" + std::to_string(reciprocal(eps)); }
std::string eps_dir(double eps) { return "eps_1_" + std::to_string(reciprocal(eps)); }

std::string step_tag(int one_based) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "k%03d", one_based);
    return buf;
}

json solver_summary(const std::vector<SolveReport>& reports) {
    json iterations = json::array();
    double worst = 0.0;
    bool all = true;
    long long total = 0;
    for (const auto& r : reports) {
        iterations.push_back(r.iterations);
        worst = std::max(worst, r.final_relative_residual);
        all = all && r.converged;
        total += r.iterations;
    }
    return {{"steps", reports.size()},
            {"iterations", iterations},
            {"total_iterations", total},
            {"max_relative_residual", worst},
            {"all_converged", all}};
}

json tensor_json(const Tensor2& k) { return json::array({json::array({k.xx, k.xy}), json::array({k.yx, k.yy})}); }

json report_json(const ErrorReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"t", row.t},
                        {"abs_l2", row.abs_l2},
                        {"rel_l2", row.rel_l2},
                        {"abs_h1", row.abs_h1},
                        {"rel_h1", row.rel_h1}});
    }
    return rows;
}

json base_manifest(std::string_view command, const ExperimentConfig& config) {
    return {{"toolkit", "tfhom"},
            {"version", toolkit_version},
            {"command", std::string(command)},
            {"config", config_to_json(config)},
            {"partial", false}};
}

void write_json(const fs::path& path, const json& j) { svg::write_file(path, j.dump(2) + "\n"); }

RunOptions run_options(const ExperimentConfig& config) {
    RunOptions o;
    o.cg.tolerance = config.cg_tolerance;
    return o;
}

std::vector<int> report_steps(const ExperimentConfig& config) {
    std::vector<int> steps;
    for (double t : config.report_times) steps.push_back(static_cast<int>(std::llround(t / config.dt)));
    return steps;
}

void export_field(const fs::path& out, const std::string& prefix, int one_based, const StructuredGrid2D& grid,
                  std::span<const double> values, const std::string& title, std::vector<std::string>& written) {
    const auto csv = out / "snapshots" / (prefix + "_" + step_tag(one_based) + ".csv");
    const auto plot = out / "plots" / (prefix + "_" + step_tag(one_based) + ".svg");
    write_nodal_csv(csv, grid, values);
    svg::write_file(plot, svg::heatmap(grid, values, title));
    written.push_back(fs::relative(csv, out).generic_string());
    written.push_back(fs::relative(plot, out).generic_string());
}

void print_report(std::ostream& os, double eps, const ErrorReport& r) {
    os << "eps = " << eps_label(eps) << "\n";
    os << "  t      abs_l2       rel_l2       abs_h1       rel_h1\n";
    for (const auto& row : r.rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-5.3g  %.4e   %.4e   %.4e   %.4e\n", row.t, row.abs_l2, row.rel_l2, row.abs_h1,
                      row.rel_h1);
        os << buf;
    }
}

struct StudyHooks {
    std::function<void(const StudyEntry&)> on_entry;
};

StudyResult study_impl(const ExperimentConfig& config, const StudyHooks& hooks) {
    const auto field = CoefficientField::parse(config.field);
    const auto initial = InitialData::parse(config.initial);
    StudyResult result;
    result.cell = solve_cell(field, config.cell_n);
    const auto options = run_options(config);
    // the homogenized problem does not depend on eps
    const auto u0 = run_homogenized(result.cell.kappa_star, config.alpha, config.grid_n, config.dt, config.final_time,
                                    initial, options);
    const auto steps = report_steps(config);

    auto one = [&](double eps) {
        const auto fine = run_fine(field, eps, config.alpha, config.grid_n, config.dt, config.final_time, initial, options);
        std::vector<CorrectorField> correctors;
        for (int k : steps) correctors.push_back(build_U1(u0, result.cell, eps, k));
        StudyEntry entry;
        entry.eps = eps;
        entry.report = compare_runs(fine, correctors);
        entry.report.fingerprint = {eps, config.alpha, config.field, config.initial, config.grid_n, config.cell_n, config.dt};
        entry.fine_reports = fine.reports;
        return entry;
    };

    const std::size_t jobs = static_cast<std::size_t>(std::max(1, config.jobs));
    for (std::size_t start = 0; start < config.eps.size(); start += jobs) {
        const std::size_t stop = std::min(config.eps.size(), start + jobs);
        std::vector<std::future<StudyEntry>> batch;
        for (std::size_t i = start; i < stop; ++i) {
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, one, config.eps[i]));
        }
        for (auto& f : batch) {
            result.entries.push_back(f.get());
            if (hooks.on_entry) hooks.on_entry(result.entries.back());
        }
    }

    if (result.entries.size() >= 2) {
        for (std::size_t row = 0; row < steps.size(); ++row) {
            std::vector<std::pair<double, double>> rl2, rh1, al2, ah1;
            for (const auto& e : result.entries) {
                const auto& r = e.report.rows[row];
                rl2.emplace_back(e.eps, r.rel_l2);
                rh1.emplace_back(e.eps, r.rel_h1);
                al2.emplace_back(e.eps, r.abs_l2);
                ah1.emplace_back(e.eps, r.abs_h1);
            }
            result.rates_rel_l2.push_back(estimate_rate(rl2));
            result.rates_rel_h1.push_back(estimate_rate(rh1));
            result.rates_abs_l2.push_back(estimate_rate(al2));
            result.rates_abs_h1.push_back(estimate_rate(ah1));
        }
    }
    return result;
}

const std::vector<std::string> known_keys{"alpha", "eps",     "T",       "dt",        "grid_n",    "cell_n",
                                          "field", "initial", "theta",   "out",       "snapshots", "report_times",
                                          "run",   "jobs",    "cg_tol", "paper_scale", "write_chi", "z"};

double number_or_fraction(const json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_fraction(v.get<std::string>());
    throw_config(std::string("'") + key + "' must be a number or a p/q string");
}

}  // namespace

double parse_fraction(std::string_view text) {
    auto parse_number = [&](std::string_view s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw_config("cannot parse number '" + std::string(text) + "'");
        }
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_number(text);
    const double num = parse_number(text.substr(0, slash));
    const double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw_config("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

void ExperimentConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw_config("alpha must lie in (0,1)");
    if (eps.empty()) throw_config("at least one eps value is required");
    for (double e : eps) {
        if (!(e > 0.0)) throw_config("eps must be positive");
        const double r = 1.0 / e;
        if (std::abs(r - std::round(r)) > 1e-9 * r || !is_power_of_two(std::llround(r))) {
            throw_config("eps must be a reciprocal power of two, got " + std::to_string(e));
        }
    }
    if (grid_n < 2 || !is_power_of_two(grid_n)) throw_config("grid_n must be a power of two >= 2");
    if (cell_n < 2 || !is_power_of_two(cell_n)) throw_config("cell_n must be a power of two >= 2");
    const int steps = step_count(dt, final_time);
    if (theta && !(*theta > 0.0 && *theta <= final_time)) throw_config("theta must lie in (0, T]");
    if (jobs < 1) throw_config("jobs must be >= 1");
    if (!(cg_tolerance > 0.0)) throw_config("cg_tol must be positive");
    for (double t : report_times) {
        const double k = t / dt;
        if (t < 0.0 || t > final_time + 1e-12 || std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k)) {
            throw_config("report time " + std::to_string(t) + " is not on the time lattice");
        }
    }
    for (int s : snapshots) {
        if (s < 1 || s > steps + 1) {
            throw_config("snapshot step " + std::to_string(s) + " outside [1, " + std::to_string(steps + 1) + "]");
        }
    }
    if (run != "fine" && run != "homogenized" && run != "corrector") {
        throw_config("run must be one of fine, homogenized, corrector");
    }
    (void)CoefficientField::parse(field);
    (void)InitialData::parse(initial);
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw_config("configuration must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end()) {
            throw_config("unknown configuration key '" + key + "'");
        }
    }
    ExperimentConfig c;
    try {
        if (j.contains("alpha")) c.alpha = number_or_fraction(j["alpha"], "alpha");
        if (j.contains("eps")) {
            c.eps.clear();
            if (j["eps"].is_array()) {
                for (const auto& v : j["eps"]) c.eps.push_back(number_or_fraction(v, "eps"));
            } else if (j["eps"].is_string() && j["eps"].get<std::string>().find(',') != std::string::npos) {
                std::stringstream ss(j["eps"].get<std::string>());
                std::string item;
                while (std::getline(ss, item, ',')) c.eps.push_back(parse_fraction(item));
            } else {
                c.eps.push_back(number_or_fraction(j["eps"], "eps"));
            }
        }
        if (j.contains("T")) c.final_time = number_or_fraction(j["T"], "T");
        if (j.contains("dt")) c.dt = number_or_fraction(j["dt"], "dt");
        if (j.contains("grid_n")) c.grid_n = j["grid_n"].get<int>();
        if (j.contains("cell_n")) c.cell_n = j["cell_n"].get<int>();
        if (j.contains("field")) c.field = j["field"].get<std::string>();
        if (j.contains("initial")) c.initial = j["initial"].get<std::string>();
        if (j.contains("theta") && !j["theta"].is_null()) c.theta = number_or_fraction(j["theta"], "theta");
        if (j.contains("out")) c.out = j["out"].get<std::string>();
        if (j.contains("snapshots")) c.snapshots = j["snapshots"].get<std::vector<int>>();
        if (j.contains("report_times")) {
            c.report_times.clear();
            for (const auto& v : j["report_times"]) c.report_times.push_back(number_or_fraction(v, "report_times"));
        }
        if (j.contains("run")) c.run = j["run"].get<std::string>();
        if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
        if (j.contains("cg_tol")) c.cg_tolerance = number_or_fraction(j["cg_tol"], "cg_tol");
        if (j.contains("write_chi")) c.write_chi = j["write_chi"].get<bool>();
        if (j.contains("z") && !j["z"].is_null()) c.z = number_or_fraction(j["z"], "z");
        if (j.value("paper_scale", false)) c.grid_n = paper_grid_n;
    } catch (const json::exception& e) {
        throw_config(std::string("bad configuration value: ") + e.what());
    }
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j{{"alpha", c.alpha},     {"eps", c.eps},         {"T", c.final_time},         {"dt", c.dt},
           {"grid_n", c.grid_n},   {"cell_n", c.cell_n},   {"field", c.field},          {"initial", c.initial},
           {"out", c.out.generic_string()}, {"snapshots", c.snapshots}, {"report_times", c.report_times},
           {"run", c.run},         {"jobs", c.jobs},       {"cg_tol", c.cg_tolerance},  {"write_chi", c.write_chi}};
    j["theta"] = c.theta ? json(*c.theta) : json(nullptr);
    j["z"] = c.z ? json(*c.z) : json(nullptr);
    return j;
}

void write_nodal_csv(const fs::path& path, const StructuredGrid2D& grid, std::span<const double> values) {
    if (values.size() != static_cast<std::size_t>(grid.node_count())) throw_argument("write_nodal_csv: length mismatch");
    std::string text = "x,y,value\n";
    text.reserve(values.size() * 75);
    for (int k = 0; k < grid.node_count(); ++k) {
        const Point p = grid.node(k);
        text += sci(p.x);
        text += ',';
        text += sci(p.y);
        text += ',';
        text += sci(values[static_cast<std::size_t>(k)]);
        text += '\n';
    }
    svg::write_file(path, text);
}

std::string errors_csv(const ErrorReport& report) {
    std::string text = "t,abs_l2,rel_l2,abs_h1,rel_h1\n";
    for (const auto& r : report.rows) {
        text += sci(r.t) + "," + sci(r.abs_l2) + "," + sci(r.rel_l2) + "," + sci(r.abs_h1) + "," + sci(r.rel_h1) + "\n";
    }
    return text;
}

StudyResult run_study(const ExperimentConfig& config) {
    config.validate();
    return study_impl(config, {});
}

int cmd_cell(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto field = CoefficientField::parse(config.field);
    const auto sol = solve_cell(field, config.cell_n);
    json summary{{"field", field.id()},
                 {"cell_n", config.cell_n},
                 {"kappa_star", tensor_json(sol.kappa_star)},
                 {"asymmetry", sol.asymmetry},
                 {"h1_seminorms", sol.h1_seminorms},
                 {"cg_iterations", {sol.reports[0].iterations, sol.reports[1].iterations}}};
    out << summary.dump(2) << "\n";
    if (config.write_chi) {
        std::vector<std::string> written;
        for (int j = 0; j < 2; ++j) {
            const auto& chi = sol.chi[static_cast<std::size_t>(j)];
            const std::string name = "chi_" + std::to_string(j + 1);
            write_nodal_csv(config.out / "cell" / (name + ".csv"), sol.cell_grid, chi);
            svg::write_file(config.out / "plots" / (name + ".svg"),
                            svg::heatmap(sol.cell_grid, chi, name + " (" + field.id() + ")"));
            written.push_back("cell/" + name + ".csv");
            written.push_back("plots/" + name + ".svg");
        }
        auto manifest = base_manifest("cell", config);
        manifest["kappa_star"] = tensor_json(sol.kappa_star);
        manifest["solver"] = {{"chi_1", solver_summary({sol.reports[0]})}, {"chi_2", solver_summary({sol.reports[1]})}};
        manifest["outputs"] = written;
        write_json(config.out / "manifest.json", manifest);
    }
    return 0;
}

int cmd_fine(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto field = CoefficientField::parse(config.field);
    const double eps = config.eps.front();
    const auto run = run_fine(field, eps, config.alpha, config.grid_n, config.dt, config.final_time,
                              InitialData::parse(config.initial), run_options(config));
    std::vector<std::string> written;
    for (int s : config.snapshots) {
        export_field(config.out, "fine", s, run.grid, run.at(s - 1),
                     "fine " + field.id() + " eps=" + eps_label(eps) + " k=" + std::to_string(s), written);
    }
    auto manifest = base_manifest("fine", config);
    manifest["solver"] = {{"fine", solver_summary(run.reports)}};
    manifest["outputs"] = written;
    write_json(config.out / "manifest.json", manifest);
    const auto final_norm = norms(run.grid, run.at(run.steps), run.at(run.steps));
    out << "fine run: field " << field.id() << ", eps " << eps_label(eps) << ", grid " << config.grid_n << ", "
        << run.steps << " steps, ||u(T)||_L2 = " << short_sci(final_norm.l2_of_u) << "\n";
    return 0;
}

int cmd_homogenize(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto field = CoefficientField::parse(config.field);
    const auto cell = solve_cell(field, config.cell_n);
    const auto run = run_homogenized(cell.kappa_star, config.alpha, config.grid_n, config.dt, config.final_time,
                                     InitialData::parse(config.initial), run_options(config));
    std::vector<std::string> written;
    for (int s : config.snapshots) {
        export_field(config.out, "homogenized", s, run.grid, run.at(s - 1),
                     "homogenized " + field.id() + " k=" + std::to_string(s), written);
    }
    auto manifest = base_manifest("homogenize", config);
    manifest["kappa_star"] = tensor_json(cell.kappa_star);
    manifest["solver"] = {{"homogenized", solver_summary(run.reports)}};
    manifest["outputs"] = written;
    write_json(config.out / "manifest.json", manifest);
    out << "kappa* = " << tensor_json(cell.kappa_star).dump() << "\n";
    out << "homogenized run: grid " << config.grid_n << ", " << run.steps << " steps\n";
    return 0;
}

int cmd_corrector(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    const auto field = CoefficientField::parse(config.field);
    const auto cell = solve_cell(field, config.cell_n);
    const auto u0 = run_homogenized(cell.kappa_star, config.alpha, config.grid_n, config.dt, config.final_time,
                                    InitialData::parse(config.initial), run_options(config));
    const double eps = config.eps.front();
    std::vector<int> steps = config.snapshots;
    if (steps.empty()) {
        for (int k : report_steps(config)) steps.push_back(k + 1);
    }
    std::vector<std::string> written;
    const std::string prefix = config.theta ? "u1_modified" : "U1";
    for (int s : steps) {
        const auto f = config.theta ? build_modified_u1(u0, cell, eps, *config.theta, s - 1) : build_U1(u0, cell, eps, s - 1);
        export_field(config.out, prefix, s, u0.grid, f.values,
                     prefix + " " + field.id() + " eps=" + eps_label(eps) + " k=" + std::to_string(s), written);
    }
    auto manifest = base_manifest("corrector", config);
    manifest["kappa_star"] = tensor_json(cell.kappa_star);
    manifest["solver"] = {{"homogenized", solver_summary(u0.reports)}};
    manifest["outputs"] = written;
    write_json(config.out / "manifest.json", manifest);
    out << prefix << ": wrote " << steps.size() << " snapshots to " << (config.out / "snapshots").generic_string() << "\n";
    return 0;
}

int cmd_study(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    if (!std::is_sorted(config.eps.begin(), config.eps.end(), std::greater<>())) {
        throw_config("study: eps list must be sorted in descending order");
    }
    auto manifest = base_manifest("study", config);
    json entries = json::array();
    std::string summary_csv = "eps,t,abs_l2,rel_l2,abs_h1,rel_h1\n";
    StudyHooks hooks;
    hooks.on_entry = [&](const StudyEntry& e) {
        svg::write_file(config.out / eps_dir(e.eps) / "errors.csv", errors_csv(e.report));
        for (const auto& r : e.report.rows) {
            summary_csv += sci(e.eps) + "," + sci(r.t) + "," + sci(r.abs_l2) + "," + sci(r.rel_l2) + "," +
                           sci(r.abs_h1) + "," + sci(r.rel_h1) + "\n";
        }
        entries.push_back({{"eps", e.eps}, {"errors", report_json(e.report)}, {"solver", solver_summary(e.fine_reports)}});
        print_report(out, e.eps, e.report);
    };

    StudyResult result;
    try {
        result = study_impl(config, hooks);
    } catch (...) {
        manifest["partial"] = true;
        manifest["entries"] = entries;
        svg::write_file(config.out / "errors.csv", summary_csv);
        write_json(config.out / "manifest.json", manifest);
        throw;
    }
    svg::write_file(config.out / "errors.csv", summary_csv);
    manifest["kappa_star"] = tensor_json(result.cell.kappa_star);
    manifest["entries"] = entries;

    if (!result.rates_rel_l2.empty()) {
        std::string rates = "t,rate_abs_l2,rate_rel_l2,rate_abs_h1,rate_rel_h1\n";
        json rates_json = json::array();
        std::vector<svg::Series> l2_series, h1_series;
        out << "observed rates (least squares in log eps):\n";
        for (std::size_t row = 0; row < result.rates_rel_l2.size(); ++row) {
            const double t = config.report_times[row];
            rates += sci(t) + "," + sci(result.rates_abs_l2[row].rate) + "," + sci(result.rates_rel_l2[row].rate) + "," +
                     sci(result.rates_abs_h1[row].rate) + "," + sci(result.rates_rel_h1[row].rate) + "\n";
            rates_json.push_back({{"t", t},
                                  {"rate_abs_l2", result.rates_abs_l2[row].rate},
                                  {"rate_rel_l2", result.rates_rel_l2[row].rate},
                                  {"rate_abs_h1", result.rates_abs_h1[row].rate},
                                  {"rate_rel_h1", result.rates_rel_h1[row].rate}});
            char buf[120];
            std::snprintf(buf, sizeof buf, "  t = %-5.3g  rel_l2 %.4f   rel_h1 %.4f\n", t, result.rates_rel_l2[row].rate,
                          result.rates_rel_h1[row].rate);
            out << buf;
            char label[32];
            std::snprintf(label, sizeof label, "t = %g", t);
            l2_series.push_back({label, result.rates_rel_l2[row].eps_values, result.rates_rel_l2[row].errors});
            h1_series.push_back({label, result.rates_rel_h1[row].eps_values, result.rates_rel_h1[row].errors});
        }
        svg::write_file(config.out / "rates.csv", rates);
        svg::write_file(config.out / "plots" / "rel_l2_vs_eps.svg",
                        svg::loglog(l2_series, "relative L2 error of U1 (" + config.field + ")", "eps", "rel L2 error"));
        svg::write_file(config.out / "plots" / "rel_h1_vs_eps.svg",
                        svg::loglog(h1_series, "relative H1 error of U1 (" + config.field + ")", "eps", "rel H1 error"));
        manifest["rates"] = rates_json;
    }
    write_json(config.out / "manifest.json", manifest);
    return 0;
}

int cmd_snapshots(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    if (config.snapshots.empty()) {
        out << "no snapshot steps requested\n";
        return 0;
    }
    const auto field = CoefficientField::parse(config.field);
    const auto initial = InitialData::parse(config.initial);
    const auto options = run_options(config);
    const double eps = config.eps.front();
    std::vector<std::string> written;
    auto manifest = base_manifest("snapshots", config);
    if (config.run == "fine") {
        const auto run = run_fine(field, eps, config.alpha, config.grid_n, config.dt, config.final_time, initial, options);
        for (int s : config.snapshots) {
            export_field(config.out, "fine", s, run.grid, run.at(s - 1),
                         "fine " + field.id() + " eps=" + eps_label(eps) + " k=" + std::to_string(s), written);
        }
        manifest["solver"] = {{"fine", solver_summary(run.reports)}};
    } else {
        const auto cell = solve_cell(field, config.cell_n);
        const auto u0 = run_homogenized(cell.kappa_star, config.alpha, config.grid_n, config.dt, config.final_time,
                                        initial, options);
        manifest["kappa_star"] = tensor_json(cell.kappa_star);
        manifest["solver"] = {{"homogenized", solver_summary(u0.reports)}};
        for (int s : config.snapshots) {
            if (config.run == "homogenized") {
                export_field(config.out, "homogenized", s, u0.grid, u0.at(s - 1),
                             "homogenized " + field.id() + " k=" + std::to_string(s), written);
            } else {
                const auto f = config.theta ? build_modified_u1(u0, cell, eps, *config.theta, s - 1)
                                            : build_U1(u0, cell, eps, s - 1);
                export_field(config.out, config.theta ? "u1_modified" : "U1", s, u0.grid, f.values,
                             "U1 " + field.id() + " eps=" + eps_label(eps) + " k=" + std::to_string(s), written);
            }
        }
    }
    manifest["outputs"] = written;
    write_json(config.out / "manifest.json", manifest);
    out << "wrote " << written.size() << " files under " << config.out.generic_string() << "\n";
    return 0;
}

int cmd_oracle(const ExperimentConfig& config, std::ostream& out) {
    config.validate();
    if (config.z) {
        out << json{{"alpha", config.alpha}, {"z", *config.z}, {"mittag_leffler", mittag_leffler(config.alpha, *config.z)}}.dump()
            << "\n";
        return 0;
    }
    // unit tensor, first Dirichlet eigenmode: u(t) = E_alpha(-2 pi^2 t^alpha) a
    const auto run = run_homogenized(Tensor2::isotropic(1.0), config.alpha, config.grid_n, config.dt, config.final_time,
                                     InitialData(InitialKind::sine_mode), run_options(config));
    const int centre = run.grid.node_index(config.grid_n / 2, config.grid_n / 2);
    std::string csv = "t,amplitude,mittag_leffler,rel_diff\n";
    out << "  t      L1 amplitude   E_alpha        rel diff\n";
    for (double t : config.report_times) {
        const int k = run.step_for_time(t);
        const double amp = run.at(k)[static_cast<std::size_t>(centre)] / run.at(0)[static_cast<std::size_t>(centre)];
        const double ref = mittag_leffler(config.alpha, -2.0 * std::numbers::pi * std::numbers::pi * std::pow(t, config.alpha));
        const double rel = std::abs(amp - ref) / std::abs(ref);
        csv += sci(t) + "," + sci(amp) + "," + sci(ref) + "," + sci(rel) + "\n";
        char buf[120];
        std::snprintf(buf, sizeof buf, "  %-5.3g  %.6e   %.6e   %.3e\n", t, amp, ref, rel);
        out << buf;
    }
    svg::write_file(config.out / "oracle.csv", csv);
    auto manifest = base_manifest("oracle", config);
    manifest["solver"] = {{"homogenized", solver_summary(run.reports)}};
    manifest["outputs"] = {"oracle.csv"};
    write_json(config.out / "manifest.json", manifest);
    return 0;
}

int run_command(std::string_view command, const ExperimentConfig& config, std::ostream& out) {
    if (command == "cell") return cmd_cell(config, out);
    if (command == "fine") return cmd_fine(config, out);
    if (command == "homogenize") return cmd_homogenize(config, out);
    if (command == "corrector") return cmd_corrector(config, out);
    if (command == "study") return cmd_study(config, out);
    if (command == "snapshots") return cmd_snapshots(config, out);
    if (command == "oracle") return cmd_oracle(config, out);
    throw_config("unknown command '" + std::string(command) + "'");
}

}  // namespace tfhom
