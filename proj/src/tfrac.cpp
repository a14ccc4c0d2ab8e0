#include "tfhom/tfrac.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "tfhom/error.hpp"

namespace tfhom {

L1Weights l1_weights(double alpha, int steps, double dt) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw_argument("l1_weights: alpha must lie in (0,1)");
    if (steps < 1) throw_argument("l1_weights: need at least one step");
    if (!(dt > 0.0)) throw_argument("l1_weights: dt must be positive");
    L1Weights w;
    w.alpha = alpha;
    w.dt = dt;
    w.b.resize(static_cast<std::size_t>(steps) + 1);
    const double p = 1.0 - alpha;
    for (int j = 0; j <= steps; ++j) w.b[static_cast<std::size_t>(j)] = std::pow(j + 1.0, p) - std::pow(double(j), p);
    w.gamma_factor = std::tgamma(2.0 - alpha) * std::pow(dt, alpha);
    return w;
}

int TimeFractionalRun::step_for_time(double t) const {
    const double k = t / dt;
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-9 * std::max(1.0, std::abs(k)) || r < 0 || r > steps) {
        std::ostringstream os;
        os << "time " << t << " is not on the time lattice (dt = " << dt << ", T = " << final_time << ")";
        throw_argument(os.str());
    }
    return static_cast<int>(r);
}

const std::vector<double>& TimeFractionalRun::at(int k) const {
    if (k < 0 || k >= static_cast<int>(history.size())) {
        throw_argument("step " + std::to_string(k) + " out of range [0, " + std::to_string(history.size() - 1) + "]");
    }
    return history[static_cast<std::size_t>(k)];
}

int step_count(double dt, double final_time) {
    if (!(dt > 0.0) || !(final_time > 0.0)) throw_config("dt and T must be positive");
    const double n = final_time / dt;
    const double r = std::round(n);
    if (std::abs(n - r) > 1e-9 * r || r < 1) {
        std::ostringstream os;
        os << "dt = " << dt << " does not divide T = " << final_time;
        throw_config(os.str());
    }
    return static_cast<int>(r);
}

L1Scheme::L1Scheme(AssembledSystem system, L1Weights weights, std::vector<double> a_load, CgOptions cg)
    : system_(std::move(system)), weights_(std::move(weights)), a_load_(std::move(a_load)), cg_(cg) {
    if (a_load_.size() != static_cast<std::size_t>(system_.dof_map.total_dofs())) {
        throw_argument("L1Scheme: a-load length does not match the dof count");
    }
    lhs_ = linear_combination(1.0, system_.mass, weights_.gamma_factor, system_.stiffness);
}

std::vector<double> L1Scheme::step(std::span<const std::vector<double>> history, SolveReport* report,
                                   std::span<const double> guess) const {
    const std::size_t k = history.size();
    if (k >= weights_.b.size()) throw_argument("L1Scheme::step: history longer than the weight table");
    const std::size_t n = a_load_.size();
    const auto& b = weights_.b;

    // w = sum_{j=0}^{k-1} (b_j - b_{j+1}) u^{k-j}; history[i] holds u^{i+1}
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        const double c = b[j] - b[j + 1];
        const auto& u = history[k - 1 - j];
        if (u.size() != n) throw_argument("L1Scheme::step: history field has wrong length");
        for (std::size_t i = 0; i < n; ++i) w[i] += c * u[i];
    }
    std::vector<double> rhs(n);
    system_.mass.matvec(w, rhs);
    for (std::size_t i = 0; i < n; ++i) rhs[i] += b[k] * a_load_[i];

    auto res = cg_solve(lhs_, rhs, cg_, guess);
    if (report) *report = res.report;
    if (!res.report.converged) {
        std::ostringstream os;
        os << "L1 step " << (k + 1) << ": CG did not converge (" << res.report.iterations
           << " iterations, relative residual " << res.report.final_relative_residual << ")";
        throw_numerical(os.str());
    }
    return std::move(res.x);
}

TimeFractionalRun run_time_fractional(int grid_n, const Coefficient& coefficient, std::string coefficient_label,
                                      double alpha, double dt, double final_time, const InitialData& initial,
                                      const RunOptions& options) {
    const int steps = step_count(dt, final_time);
    TimeFractionalRun run;
    run.grid = make_grid(grid_n, BoundaryKind::dirichlet);
    run.alpha = alpha;
    run.dt = dt;
    run.final_time = final_time;
    run.steps = steps;
    run.coefficient = std::move(coefficient_label);
    run.initial = initial.id();

    const auto& grid = run.grid;
    auto dofs = DofMap::dirichlet(grid);
    const auto a_nodal = interpolate(grid, [&initial](Point x) { return initial(x); });

    // a-load = int a_h phi_p, including boundary values of a_h if any
    const auto all = DofMap::all_nodes(grid);
    const auto full_mass = assemble_mass(grid, all);
    const auto full_load = matvec(full_mass, a_nodal);
    std::vector<double> a_load(static_cast<std::size_t>(dofs.total_dofs()));
    for (int node = 0; node < grid.node_count(); ++node) {
        const int d = dofs.dof(node);
        if (d != DofMap::constrained) a_load[static_cast<std::size_t>(d)] = full_load[static_cast<std::size_t>(node)];
    }

    auto system = assemble_system(grid, coefficient, dofs);
    L1Scheme scheme(std::move(system), l1_weights(alpha, steps, dt), std::move(a_load), options.cg);

    std::vector<std::vector<double>> dof_history;
    dof_history.reserve(static_cast<std::size_t>(steps));
    run.history.reserve(static_cast<std::size_t>(steps) + 1);
    run.history.push_back(a_nodal);
    const auto a_dofs = scheme.system().dof_map.restrict(a_nodal);
    for (int k = 0; k < steps; ++k) {
        SolveReport report;
        std::span<const double> guess = options.warm_start ? std::span<const double>(dof_history.empty() ? a_dofs : dof_history.back())
                                                           : std::span<const double>{};
        auto next = scheme.step(dof_history, &report, guess);
        run.history_terms.push_back(static_cast<long long>(dof_history.size()));
        run.reports.push_back(report);
        run.history.push_back(scheme.system().dof_map.extend(next));
        dof_history.push_back(std::move(next));
    }
    return run;
}

TimeFractionalRun run_fine(const CoefficientField& field, double eps, double alpha, int grid_n, double dt,
                           double final_time, const InitialData& initial, const RunOptions& options) {
    if (!(eps > 0.0)) throw_argument("run_fine: eps must be positive");
    if (grid_n * eps < 16.0) {
        std::clog << "warning: grid_n = " << grid_n << " gives " << grid_n * eps
                  << " elements per period; 16 or more recommended\n";
    }
    auto coefficient = Coefficient::scalar([field, eps](Point x) { return eval_kappa_eps(field, eps, x); });
    std::ostringstream label;
    label << field.id() << "@eps=" << eps;
    return run_time_fractional(grid_n, coefficient, label.str(), alpha, dt, final_time, initial, options);
}

TimeFractionalRun run_homogenized(const Tensor2& kappa_star, double alpha, int grid_n, double dt, double final_time,
                                  const InitialData& initial, const RunOptions& options) {
    std::ostringstream label;
    label.precision(17);
    label << "tensor[" << kappa_star.xx << "," << kappa_star.xy << ";" << kappa_star.yx << "," << kappa_star.yy << "]";
    return run_time_fractional(grid_n, Coefficient::constant(kappa_star), label.str(), alpha, dt, final_time, initial,
                               options);
}

}  // namespace tfhom
