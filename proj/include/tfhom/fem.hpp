#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tfhom/grid.hpp"
#include "tfhom/sparse.hpp"

namespace tfhom {

/// Symmetric-or-not 2x2 tensor, row-major.
struct Tensor2 {
    double xx = 0.0;
    double xy = 0.0;
    double yx = 0.0;
    double yy = 0.0;

    static Tensor2 isotropic(double c) { return {c, 0.0, 0.0, c}; }
    static Tensor2 diag(double a, double b) { return {a, 0.0, 0.0, b}; }
};

/// Pointwise diffusion coefficient, scalar or tensor valued.
class Coefficient {
public:
    static Coefficient scalar(std::function<double(Point)> f);
    static Coefficient tensor(std::function<Tensor2(Point)> f);
    static Coefficient constant(Tensor2 k);

    bool is_scalar() const { return static_cast<bool>(scalar_); }
    Tensor2 operator()(Point x) const;

private:
    std::function<double(Point)> scalar_;
    std::function<Tensor2(Point)> tensor_;
};

/// 2x2 Gauss-Legendre abscissae on [0,1].
inline constexpr double gauss_lo = 0.21132486540518711775;
inline constexpr double gauss_hi = 0.78867513459481288225;

SparseMatrix assemble_stiffness(const StructuredGrid2D& grid, const Coefficient& coefficient, const DofMap& dofs);
SparseMatrix assemble_mass(const StructuredGrid2D& grid, const DofMap& dofs);
std::vector<double> project_load(const StructuredGrid2D& grid, const DofMap& dofs,
                                 const std::function<double(Point)>& f);

/// Exact 4x4 element mass block h^2/36 [[4,2,1,2],...].
std::vector<double> element_mass_block(double h);

struct AssembledSystem {
    SparseMatrix stiffness;
    SparseMatrix mass;
    DofMap dof_map;
    std::string quadrature = "gauss-2x2";
};

AssembledSystem assemble_system(const StructuredGrid2D& grid, const Coefficient& coefficient, const DofMap& dofs);

/// Nodal interpolation onto the Q1 space.
std::vector<double> interpolate(const StructuredGrid2D& grid, const std::function<double(Point)>& f);

struct NormReport {
    double l2_of_diff = 0.0;
    double h1_of_diff = 0.0;
    double l2_of_u = 0.0;
    double h1_of_u = 0.0;
};

/// L2 and full H1 norms of the Q1 interpolants of u - v and u.
NormReport norms(const StructuredGrid2D& grid, std::span<const double> u, std::span<const double> v);

/// Squared L2 and H1-seminorm of one nodal field, by 2x2 Gauss.
struct NormSquares {
    double l2 = 0.0;
    double h1_semi = 0.0;
};
NormSquares norm_squares(const StructuredGrid2D& grid, std::span<const double> u);

/// Integral of the Q1 interpolant of u over the unit square.
double integrate(const StructuredGrid2D& grid, std::span<const double> u);

}  // namespace tfhom
