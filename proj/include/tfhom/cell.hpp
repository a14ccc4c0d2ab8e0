#pragma once

#include <array>
#include <vector>

#include "tfhom/fem.hpp"
#include "tfhom/fields.hpp"
#include "tfhom/grid.hpp"
#include "tfhom/sparse.hpp"

namespace tfhom {

/// Periodic, zero-mean cell correctors chi_1, chi_2 on the unit cell and the
/// effective tensor they induce.
struct CellSolution {
    StructuredGrid2D cell_grid{2, BoundaryKind::periodic};
    /// Nodal values on all (n+1)^2 cell nodes; periodic copies are filled.
    std::array<std::vector<double>, 2> chi;
    Tensor2 kappa_star;
    /// Largest |k*_12 - k*_21| before symmetrization.
    double asymmetry = 0.0;
    std::array<double, 2> h1_seminorms{};
    std::array<SolveReport, 2> reports{};
    std::string field_id;
    double cell_measure = 1.0;

    /// chi_j at an arbitrary point: periodic wrap, then bilinear interpolation.
    double chi_at(int j, Point y) const;
};

/// Default cell resolution (h = 2^-6).
inline constexpr int default_cell_n = 64;

/// Solves the two periodic cell problems by pinning one dof and shifting to
/// zero mean, then evaluates the effective tensor. Throws on CG failure.
CellSolution solve_cell(const CoefficientField& field, int n_cell = default_cell_n, CgOptions options = {.tolerance = 1e-12});

/// k*_ij = |Y|^-1 int_Y kappa (delta_ij + d chi_j / d y_i) dy with the assembly
/// quadrature, symmetrized. Throws if the raw asymmetry exceeds 1e-6.
Tensor2 effective_tensor(const CellSolution& sol, const CoefficientField& field, double* asymmetry = nullptr);

/// sqrt(int_Y kappa^2) by the same quadrature.
double kappa_l2_norm(const CoefficientField& field, int n_cell);

}  // namespace tfhom
