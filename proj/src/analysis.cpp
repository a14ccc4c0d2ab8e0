#include "tfhom/analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tfhom/error.hpp"

namespace tfhom {

ErrorRow compare_fields(const StructuredGrid2D& grid, double t, std::span<const double> fine,
                        std::span<const double> approx) {
    const auto n = norms(grid, fine, approx);
    auto ratio = [](double num, double den) { return den > 0.0 ? num / den : (num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()); };
    return {t, n.l2_of_diff, ratio(n.l2_of_diff, n.l2_of_u), n.h1_of_diff, ratio(n.h1_of_diff, n.h1_of_u)};
}

ErrorReport compare_runs(const TimeFractionalRun& fine, std::span<const CorrectorField> correctors) {
    ErrorReport report;
    report.fingerprint.alpha = fine.alpha;
    report.fingerprint.grid_n = fine.grid.n();
    report.fingerprint.dt = fine.dt;
    report.fingerprint.initial = fine.initial;
    for (const auto& c : correctors) {
        const int k = fine.step_for_time(c.time);
        report.rows.push_back(compare_fields(fine.grid, c.time, fine.at(k), c.values));
    }
    return report;
}

RateEstimate estimate_rate(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw_argument("estimate_rate: need at least two (eps, error) pairs");
    RateEstimate est;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [eps, err] : points) {
        if (!(eps > 0.0) || !(err > 0.0)) throw_argument("estimate_rate: eps and error must be positive");
        est.eps_values.push_back(eps);
        est.errors.push_back(err);
        const double x = std::log(eps);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) throw_argument("estimate_rate: eps values must not all coincide");
    est.rate = (n * sxy - sx * sy) / denom;
    return est;
}

double mittag_leffler_series(double alpha, double z) {
    if (z == 0.0) return 1.0;
    // Neumaier-compensated sum of z^m / Gamma(alpha m + 1), terms in log space
    const double log_abs_z = std::log(std::abs(z));
    double sum = 0.0;
    double comp = 0.0;
    const double peak = std::pow(std::abs(z), 1.0 / alpha);
    for (int m = 0; m < 2000; ++m) {
        const double mag = std::exp(m * log_abs_z - std::lgamma(alpha * m + 1.0));
        const double term = (z < 0.0 && (m % 2 == 1)) ? -mag : mag;
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if (m > peak + 2 && mag < 1e-18 * std::abs(sum + comp)) break;
    }
    return sum + comp;
}

double mittag_leffler_integral(double alpha, double z) {
    if (z == 0.0) return 1.0;
    if (alpha >= 1.0) return std::exp(z);
    // E_a(-x) = sin(a pi)/(a pi) int_0^inf exp(-v^(1/a)) / ((v/x)^2 + 2 (v/x) cos(a pi) + 1) dv / x
    const double x = -z;
    const double c = std::cos(alpha * std::numbers::pi);
    auto f = [alpha, x, c](double v) {
        const double u = v / x;
        return std::exp(-std::pow(v, 1.0 / alpha)) / (u * u + 2.0 * u * c + 1.0);
    };
    double err = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14, &err);
    return std::sin(alpha * std::numbers::pi) / (alpha * std::numbers::pi) * integral / x;
}

double mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw_argument("mittag_leffler: alpha must lie in (0,1]");
    if (!(z >= -50.0 && z <= 0.0)) throw_argument("mittag_leffler: z must lie in [-50, 0]");
    if (alpha == 1.0) return std::exp(z);
    // the largest series term is about exp(|z|^(1/alpha)); past e^5 cancellation costs digits
    return std::pow(-z, 1.0 / alpha) <= 5.0 ? mittag_leffler_series(alpha, z) : mittag_leffler_integral(alpha, z);
}

TimeFractionalRun backward_euler_reference(const StructuredGrid2D& grid, const AssembledSystem& system, double dt,
                                           double final_time, std::span<const double> a_nodal, const CgOptions& cg) {
    const int steps = step_count(dt, final_time);
    if (a_nodal.size() != static_cast<std::size_t>(grid.node_count())) {
        throw_argument("backward_euler_reference: initial field length does not match grid");
    }
    TimeFractionalRun run;
    run.grid = grid;
    run.alpha = 1.0;
    run.dt = dt;
    run.final_time = final_time;
    run.steps = steps;
    run.coefficient = "backward-euler";
    const auto& dofs = system.dof_map;
    const auto lhs = linear_combination(1.0, system.mass, dt, system.stiffness);
    std::vector<double> u = dofs.restrict(std::vector<double>(a_nodal.begin(), a_nodal.end()));
    run.history.emplace_back(a_nodal.begin(), a_nodal.end());
    std::vector<double> rhs(u.size());
    for (int k = 0; k < steps; ++k) {
        system.mass.matvec(u, rhs);
        auto res = cg_solve(lhs, rhs, cg, u);
        if (!res.report.converged) {
            std::ostringstream os;
            os << "backward Euler step " << (k + 1) << ": CG did not converge";
            throw_numerical(os.str());
        }
        u = std::move(res.x);
        run.reports.push_back(res.report);
        run.history_terms.push_back(1);
        run.history.push_back(dofs.extend(u));
    }
    return run;
}

}  // namespace tfhom
