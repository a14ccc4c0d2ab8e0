#pragma once

#include <span>
#include <string>
#include <vector>

#include "tfhom/fem.hpp"
#include "tfhom/fields.hpp"
#include "tfhom/grid.hpp"
#include "tfhom/sparse.hpp"

namespace tfhom {

/// L1 discretization of the Caputo derivative on a uniform time grid:
/// b_j = (j+1)^(1-alpha) - j^(1-alpha), scaled by Gamma(2-alpha) dt^alpha.
struct L1Weights {
    double alpha = 0.0;
    double dt = 0.0;
    std::vector<double> b;  // j = 0..N
    double gamma_factor = 0.0;
};

L1Weights l1_weights(double alpha, int steps, double dt);

/// Nodal solution history u^0..u^N of one time-fractional solve. Step k sits at
/// t = k*dt; u^0 is the nodal interpolant of the initial data.
struct TimeFractionalRun {
    StructuredGrid2D grid{2, BoundaryKind::dirichlet};
    double alpha = 0.0;
    double dt = 0.0;
    double final_time = 0.0;
    int steps = 0;
    std::string coefficient;
    std::string initial;
    std::vector<std::vector<double>> history;
    std::vector<SolveReport> reports;            // one per step k = 1..N
    std::vector<long long> history_terms;        // previous fields touched by step k

    double time(int k) const { return k * dt; }
    /// Step index of t; throws unless t lies on the time lattice.
    int step_for_time(double t) const;
    const std::vector<double>& at(int k) const;
};

struct RunOptions {
    CgOptions cg{};
    /// Warm-start each step from the previous solution.
    bool warm_start = true;
};

/// One L1 step on a fixed assembled system. The left-hand matrix
/// M + gamma_factor*A is built once.
class L1Scheme {
public:
    L1Scheme(AssembledSystem system, L1Weights weights, std::vector<double> a_load, CgOptions cg = {});

    /// Given u^1..u^k in dof space (k = history.size()), returns u^{k+1} solving
    /// (M + g A) u = sum_{j<k} (b_j - b_{j+1}) M u^{k-j} + b_k (a-load).
    std::vector<double> step(std::span<const std::vector<double>> history, SolveReport* report = nullptr,
                             std::span<const double> guess = {}) const;

    const AssembledSystem& system() const { return system_; }
    const L1Weights& weights() const { return weights_; }
    const std::vector<double>& a_load() const { return a_load_; }

private:
    AssembledSystem system_;
    L1Weights weights_;
    std::vector<double> a_load_;
    SparseMatrix lhs_;
    CgOptions cg_;
};

/// Full run of the scheme with Dirichlet data on `grid_n`; the load of the
/// initial data is M_full applied to its nodal interpolant.
TimeFractionalRun run_time_fractional(int grid_n, const Coefficient& coefficient, std::string coefficient_label,
                                      double alpha, double dt, double final_time, const InitialData& initial,
                                      const RunOptions& options = {});

TimeFractionalRun run_fine(const CoefficientField& field, double eps, double alpha, int grid_n, double dt,
                           double final_time, const InitialData& initial, const RunOptions& options = {});

TimeFractionalRun run_homogenized(const Tensor2& kappa_star, double alpha, int grid_n, double dt, double final_time,
                                  const InitialData& initial, const RunOptions& options = {});

/// Number of steps N = T/dt; throws unless dt divides T.
int step_count(double dt, double final_time);

}  // namespace tfhom
