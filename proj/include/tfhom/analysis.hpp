#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tfhom/corrector.hpp"
#include "tfhom/fem.hpp"
#include "tfhom/tfrac.hpp"

namespace tfhom {

struct ErrorRow {
    double t = 0.0;
    double abs_l2 = 0.0;
    double rel_l2 = 0.0;
    double abs_h1 = 0.0;
    double rel_h1 = 0.0;
};

struct RunFingerprint {
    double eps = 0.0;
    double alpha = 0.0;
    std::string field;
    std::string initial;
    int grid_n = 0;
    int cell_n = 0;
    double dt = 0.0;
};

struct ErrorReport {
    std::vector<ErrorRow> rows;
    RunFingerprint fingerprint;
};

/// Report rows used throughout: t = 0.1, 0.5, 1.
inline const std::vector<double> default_report_times{0.1, 0.5, 1.0};

/// Norms of u_fine - U1 at each corrector field's time; relative columns divide
/// by the fine solution's own norm.
ErrorReport compare_runs(const TimeFractionalRun& fine, std::span<const CorrectorField> correctors);

ErrorRow compare_fields(const StructuredGrid2D& grid, double t, std::span<const double> fine,
                        std::span<const double> approx);

struct RateEstimate {
    std::vector<double> eps_values;
    std::vector<double> errors;
    double rate = 0.0;
};

/// Least-squares slope of log(error) against log(eps).
RateEstimate estimate_rate(std::span<const std::pair<double, double>> points);

/// E_alpha(z) for alpha in (0,1], z in [-50, 0]. Power series while
/// |z|^(1/alpha) <= 5, integral representation beyond.
double mittag_leffler(double alpha, double z);
/// The two routes, exposed for cross-checking.
double mittag_leffler_series(double alpha, double z);
double mittag_leffler_integral(double alpha, double z);

/// Implicit Euler for the classical heat equation on the same system:
/// (M + dt A) u^{k+1} = M u^k.
TimeFractionalRun backward_euler_reference(const StructuredGrid2D& grid, const AssembledSystem& system, double dt,
                                           double final_time, std::span<const double> a_nodal,
                                           const CgOptions& cg = {});

}  // namespace tfhom
