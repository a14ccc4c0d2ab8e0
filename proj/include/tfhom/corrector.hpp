#pragma once

#include <span>
#include <vector>

#include "tfhom/cell.hpp"
#include "tfhom/grid.hpp"
#include "tfhom/tfrac.hpp"

namespace tfhom {

struct NodalGradient {
    std::vector<double> dx;
    std::vector<double> dy;
};

/// Nodal gradient: average over adjacent elements of each element's Q1
/// gradient evaluated at that node. Exact for bilinear fields.
NodalGradient recover_gradient(const StructuredGrid2D& grid, std::span<const double> u0);

/// Boundary cut-off: 1 on the boundary, 0 once dist(x, boundary) >= eps, quintic
/// smoothstep in between (C2).
double cutoff_spatial(double eps, Point x);
/// Time cut-off: 0 for t <= theta/2, 1 for t >= theta, linear in between.
double cutoff_temporal(double theta, double t);

/// Distance to the boundary of the unit square.
double boundary_distance(Point x);

struct CorrectorField {
    std::vector<double> values;
    int step = 0;
    double time = 0.0;
    bool modified = false;
    double theta = 0.0;
};

/// u0 + eps * sum_j w(x) chi_j(x/eps) du0/dx_j at the nodes of `grid`, with
/// weight w(x) = 1 unless `weight` is given.
std::vector<double> first_order_field(const StructuredGrid2D& grid, std::span<const double> u0, const CellSolution& cell,
                                      double eps, std::span<const double> weight = {});

/// First-order approximation U1 at step k of a homogenized run.
CorrectorField build_U1(const TimeFractionalRun& u0_run, const CellSolution& cell, double eps, int step);

/// Variant with the corrector damped by eta(t; theta) (1 - zeta^eps(x)).
CorrectorField build_modified_u1(const TimeFractionalRun& u0_run, const CellSolution& cell, double eps, double theta,
                                 int step);

}  // namespace tfhom
