#include "tfhom/cell.hpp"

#include <cmath>
#include <sstream>

#include "tfhom/error.hpp"

namespace tfhom {

namespace {

std::array<double, 4> shape_dxi(double eta) { return {-(1 - eta), (1 - eta), eta, -eta}; }
std::array<double, 4> shape_deta(double xi) { return {-(1 - xi), -xi, xi, (1 - xi)}; }
constexpr double gauss[2] = {gauss_lo, gauss_hi};

// b_p = -int_Y kappa d(phi_p)/dy_j
std::vector<double> cell_rhs(const StructuredGrid2D& grid, const DofMap& dofs, const CoefficientField& field, int j) {
    const double h = grid.h();
    std::vector<double> b(static_cast<std::size_t>(dofs.total_dofs()), 0.0);
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        const Point origin = grid.element_origin(e);
        for (double xi : gauss) {
            for (double eta : gauss) {
                const double k = field({origin.x + xi * h, origin.y + eta * h});
                const auto g = j == 0 ? shape_dxi(eta) : shape_deta(xi);
                for (int a = 0; a < 4; ++a) {
                    // area h^2 times 1/h from the gradient
                    b[static_cast<std::size_t>(dofs.dof(nodes[a]))] -= 0.25 * h * k * g[a];
                }
            }
        }
    }
    return b;
}

}  // namespace

double CellSolution::chi_at(int j, Point y) const {
    const Point w = periodic_wrap(y);
    const int n = cell_grid.n();
    const double sx = w.x * n;
    const double sy = w.y * n;
    const int i0 = std::min(static_cast<int>(sx), n - 1);
    const int j0 = std::min(static_cast<int>(sy), n - 1);
    const double fx = sx - i0;
    const double fy = sy - j0;
    const auto& c = chi[static_cast<std::size_t>(j)];
    auto at = [&](int i, int jj) { return c[static_cast<std::size_t>(cell_grid.node_index(i, jj))]; };
    return (1 - fx) * (1 - fy) * at(i0, j0) + fx * (1 - fy) * at(i0 + 1, j0) + fx * fy * at(i0 + 1, j0 + 1) +
           (1 - fx) * fy * at(i0, j0 + 1);
}

CellSolution solve_cell(const CoefficientField& field, int n_cell, CgOptions options) {
    if (!(field.mu() > 0.0)) throw_argument("solve_cell: field is not elliptic (mu <= 0)");
    CellSolution sol;
    sol.cell_grid = make_grid(n_cell, BoundaryKind::periodic);
    sol.field_id = field.id();
    const auto& grid = sol.cell_grid;
    const auto dofs = DofMap::periodic(grid);

    const auto full = assemble_stiffness(grid, Coefficient::scalar([&field](Point y) { return field(y); }), dofs);
    // pin dof 0 to remove the constant kernel
    const auto pinned = full.without_index(0);

    for (int j = 0; j < 2; ++j) {
        const auto b = cell_rhs(grid, dofs, field, j);
        const std::vector<double> b_red(b.begin() + 1, b.end());
        auto res = cg_solve(pinned, b_red, options);
        sol.reports[static_cast<std::size_t>(j)] = res.report;
        if (!res.report.converged) {
            std::ostringstream os;
            os << "solve_cell: CG did not converge for chi_" << (j + 1) << " after " << res.report.iterations
               << " iterations (relative residual " << res.report.final_relative_residual << ")";
            throw_numerical(os.str());
        }
        std::vector<double> x(static_cast<std::size_t>(dofs.total_dofs()), 0.0);
        std::copy(res.x.begin(), res.x.end(), x.begin() + 1);
        // uniform periodic mesh: each dof carries weight h^2 in the mean
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= static_cast<double>(x.size());
        for (double& v : x) v -= mean;
        sol.chi[static_cast<std::size_t>(j)] = dofs.extend(x);
        sol.h1_seminorms[static_cast<std::size_t>(j)] =
            std::sqrt(norm_squares(grid, sol.chi[static_cast<std::size_t>(j)]).h1_semi);
    }
    sol.kappa_star = effective_tensor(sol, field, &sol.asymmetry);
    return sol;
}

Tensor2 effective_tensor(const CellSolution& sol, const CoefficientField& field, double* asymmetry) {
    const auto& grid = sol.cell_grid;
    const double h = grid.h();
    double k[2][2] = {{0, 0}, {0, 0}};
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        const Point origin = grid.element_origin(e);
        for (double xi : gauss) {
            for (double eta : gauss) {
                const double kappa = field({origin.x + xi * h, origin.y + eta * h});
                const auto gx = shape_dxi(eta);
                const auto gy = shape_deta(xi);
                for (int j = 0; j < 2; ++j) {
                    const auto& c = sol.chi[static_cast<std::size_t>(j)];
                    double dx = 0.0, dy = 0.0;
                    for (int a = 0; a < 4; ++a) {
                        dx += gx[a] * c[static_cast<std::size_t>(nodes[a])];
                        dy += gy[a] * c[static_cast<std::size_t>(nodes[a])];
                    }
                    dx /= h;
                    dy /= h;
                    const double w = 0.25 * h * h * kappa;
                    k[0][j] += w * ((j == 0 ? 1.0 : 0.0) + dx);
                    k[1][j] += w * ((j == 1 ? 1.0 : 0.0) + dy);
                }
            }
        }
    }
    const double measure = sol.cell_measure;
    for (auto& row : k)
        for (double& v : row) v /= measure;
    const double asym = std::abs(k[0][1] - k[1][0]);
    if (asymmetry) *asymmetry = asym;
    if (asym > 1e-6) {
        std::ostringstream os;
        os << "effective_tensor: asymmetry " << asym << " exceeds 1e-6; the cell solve is inconsistent";
        throw_numerical(os.str());
    }
    const double off = 0.5 * (k[0][1] + k[1][0]);
    return {k[0][0], off, off, k[1][1]};
}

double kappa_l2_norm(const CoefficientField& field, int n_cell) {
    const auto grid = make_grid(n_cell, BoundaryKind::periodic);
    const double h = grid.h();
    double sum = 0.0;
    for (int e = 0; e < grid.element_count(); ++e) {
        const Point origin = grid.element_origin(e);
        for (double xi : gauss)
            for (double eta : gauss) {
                const double kappa = field({origin.x + xi * h, origin.y + eta * h});
                sum += 0.25 * h * h * kappa * kappa;
            }
    }
    return std::sqrt(sum);
}

}  // namespace tfhom
