#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tfhom/analysis.hpp"
#include "tfhom/cell.hpp"

namespace tfhom {

inline constexpr const char* toolkit_version = "0.1.0";
inline constexpr int desk_grid_n = 256;
inline constexpr int paper_grid_n = 512;

/// Everything a command needs; built from a JSON object whose keys mirror the
/// CLI flags. Snapshot steps are 1-based (step 1 is t = 0).
struct ExperimentConfig {
    double alpha = 0.9;
    std::vector<double> eps{0.125};
    double final_time = 1.0;
    double dt = 0.01;
    int grid_n = desk_grid_n;
    int cell_n = default_cell_n;
    std::string field = "smooth-low";
    std::string initial = "smooth";
    std::optional<double> theta;
    std::filesystem::path out = "out";
    std::vector<int> snapshots;
    std::vector<double> report_times = default_report_times;
    std::string run = "fine";  // snapshots: fine | homogenized | corrector
    int jobs = 1;
    double cg_tolerance = 1e-10;
    bool write_chi = false;
    std::optional<double> z;  // oracle: evaluate E_alpha(z) only

    /// Throws a config error naming the first violated invariant.
    void validate() const;
};

/// Accepts numbers or "p/q" strings for eps (single value or list).
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// "1/8" style or plain decimal.
double parse_fraction(std::string_view text);

/// Result of one epsilon in a study.
struct StudyEntry {
    double eps = 0.0;
    ErrorReport report;
    std::vector<SolveReport> fine_reports;
};

struct StudyResult {
    CellSolution cell;
    std::vector<StudyEntry> entries;
    std::vector<RateEstimate> rates_rel_l2;  // one per report time
    std::vector<RateEstimate> rates_rel_h1;
    std::vector<RateEstimate> rates_abs_l2;
    std::vector<RateEstimate> rates_abs_h1;
};

/// Runs the study in memory (no files).
StudyResult run_study(const ExperimentConfig& config);

int cmd_cell(const ExperimentConfig& config, std::ostream& out);
int cmd_fine(const ExperimentConfig& config, std::ostream& out);
int cmd_homogenize(const ExperimentConfig& config, std::ostream& out);
int cmd_corrector(const ExperimentConfig& config, std::ostream& out);
int cmd_study(const ExperimentConfig& config, std::ostream& out);
int cmd_snapshots(const ExperimentConfig& config, std::ostream& out);
int cmd_oracle(const ExperimentConfig& config, std::ostream& out);

/// Dispatch by subcommand name.
int run_command(std::string_view command, const ExperimentConfig& config, std::ostream& out);

/// Output helpers, shared with tests.
void write_nodal_csv(const std::filesystem::path& path, const StructuredGrid2D& grid, std::span<const double> values);
std::string errors_csv(const ErrorReport& report);

}  // namespace tfhom
