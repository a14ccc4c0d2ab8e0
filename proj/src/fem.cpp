#include "tfhom/fem.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "tfhom/error.hpp"

namespace tfhom {

namespace {

struct QuadPoint {
    double xi;
    double eta;
};

constexpr std::array<QuadPoint, 4> quad_points{{
    {gauss_lo, gauss_lo},
    {gauss_hi, gauss_lo},
    {gauss_hi, gauss_hi},
    {gauss_lo, gauss_hi},
}};
constexpr double quad_weight = 0.25;

// Q1 basis on the reference square, counterclockwise from (0,0).
std::array<double, 4> shape(double xi, double eta) {
    return {(1 - xi) * (1 - eta), xi * (1 - eta), xi * eta, (1 - xi) * eta};
}
std::array<double, 4> shape_dxi(double eta) { return {-(1 - eta), (1 - eta), eta, -eta}; }
std::array<double, 4> shape_deta(double xi) { return {-(1 - xi), -xi, xi, (1 - xi)}; }

[[noreturn]] void non_finite(const char* what, Point p) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": non-finite coefficient at quadrature point (" << p.x << ", " << p.y << ")";
    throw_numerical(os.str());
}

}  // namespace

Coefficient Coefficient::scalar(std::function<double(Point)> f) {
    Coefficient c;
    c.scalar_ = std::move(f);
    return c;
}

Coefficient Coefficient::tensor(std::function<Tensor2(Point)> f) {
    Coefficient c;
    c.tensor_ = std::move(f);
    return c;
}

Coefficient Coefficient::constant(Tensor2 k) {
    return tensor([k](Point) { return k; });
}

Tensor2 Coefficient::operator()(Point x) const {
    if (scalar_) return Tensor2::isotropic(scalar_(x));
    return tensor_(x);
}

SparseMatrix assemble_stiffness(const StructuredGrid2D& grid, const Coefficient& coefficient, const DofMap& dofs) {
    const double h = grid.h();
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(grid.element_count()) * 16);
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        const Point origin = grid.element_origin(e);
        std::array<double, 16> local{};
        for (const auto& q : quad_points) {
            const Point x{origin.x + q.xi * h, origin.y + q.eta * h};
            const Tensor2 k = coefficient(x);
            if (!std::isfinite(k.xx) || !std::isfinite(k.xy) || !std::isfinite(k.yx) || !std::isfinite(k.yy)) {
                non_finite("assemble_stiffness", x);
            }
            // h^2 (area) times 1/h^2 (two reference gradients) cancels in 2D
            const auto gx = shape_dxi(q.eta);
            const auto gy = shape_deta(q.xi);
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    const double kgx = k.xx * gx[b] + k.xy * gy[b];
                    const double kgy = k.yx * gx[b] + k.yy * gy[b];
                    local[a * 4 + b] += quad_weight * (gx[a] * kgx + gy[a] * kgy);
                }
            }
        }
        for (int a = 0; a < 4; ++a) {
            const int row = dofs.dof(nodes[a]);
            if (row == DofMap::constrained) continue;
            for (int b = 0; b < 4; ++b) {
                const int col = dofs.dof(nodes[b]);
                if (col == DofMap::constrained) continue;
                triplets.push_back({row, col, local[a * 4 + b]});
            }
        }
    }
    return SparseMatrix::from_triplets(dofs.total_dofs(), dofs.total_dofs(), std::move(triplets));
}

std::vector<double> element_mass_block(double h) {
    std::vector<double> m(16);
    const double s = h * h / 36.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int d = std::abs(a - b);
            // same node 4, edge neighbours 2, opposite corner 1
            m[static_cast<std::size_t>(a * 4 + b)] = s * (d == 0 ? 4.0 : (d == 2 ? 1.0 : 2.0));
        }
    }
    return m;
}

SparseMatrix assemble_mass(const StructuredGrid2D& grid, const DofMap& dofs) {
    const double h = grid.h();
    std::array<double, 16> local{};
    for (const auto& q : quad_points) {
        const auto phi = shape(q.xi, q.eta);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) local[a * 4 + b] += quad_weight * h * h * phi[a] * phi[b];
    }
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(grid.element_count()) * 16);
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        for (int a = 0; a < 4; ++a) {
            const int row = dofs.dof(nodes[a]);
            if (row == DofMap::constrained) continue;
            for (int b = 0; b < 4; ++b) {
                const int col = dofs.dof(nodes[b]);
                if (col == DofMap::constrained) continue;
                triplets.push_back({row, col, local[a * 4 + b]});
            }
        }
    }
    return SparseMatrix::from_triplets(dofs.total_dofs(), dofs.total_dofs(), std::move(triplets));
}

std::vector<double> project_load(const StructuredGrid2D& grid, const DofMap& dofs,
                                 const std::function<double(Point)>& f) {
    const double h = grid.h();
    std::vector<double> load(static_cast<std::size_t>(dofs.total_dofs()), 0.0);
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        const Point origin = grid.element_origin(e);
        for (const auto& q : quad_points) {
            const Point x{origin.x + q.xi * h, origin.y + q.eta * h};
            const double fx = f(x);
            if (!std::isfinite(fx)) non_finite("project_load", x);
            const auto phi = shape(q.xi, q.eta);
            for (int a = 0; a < 4; ++a) {
                const int row = dofs.dof(nodes[a]);
                if (row != DofMap::constrained) load[static_cast<std::size_t>(row)] += quad_weight * h * h * fx * phi[a];
            }
        }
    }
    return load;
}

AssembledSystem assemble_system(const StructuredGrid2D& grid, const Coefficient& coefficient, const DofMap& dofs) {
    return {assemble_stiffness(grid, coefficient, dofs), assemble_mass(grid, dofs), dofs, "gauss-2x2"};
}

std::vector<double> interpolate(const StructuredGrid2D& grid, const std::function<double(Point)>& f) {
    std::vector<double> out(static_cast<std::size_t>(grid.node_count()));
    for (int k = 0; k < grid.node_count(); ++k) out[static_cast<std::size_t>(k)] = f(grid.node(k));
    return out;
}

NormSquares norm_squares(const StructuredGrid2D& grid, std::span<const double> u) {
    if (u.size() != static_cast<std::size_t>(grid.node_count())) throw_argument("norms: field length does not match grid");
    const double h = grid.h();
    NormSquares out;
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        std::array<double, 4> ue{};
        for (int a = 0; a < 4; ++a) ue[a] = u[static_cast<std::size_t>(nodes[a])];
        for (const auto& q : quad_points) {
            const auto phi = shape(q.xi, q.eta);
            const auto gx = shape_dxi(q.eta);
            const auto gy = shape_deta(q.xi);
            double v = 0.0, dx = 0.0, dy = 0.0;
            for (int a = 0; a < 4; ++a) {
                v += phi[a] * ue[a];
                dx += gx[a] * ue[a];
                dy += gy[a] * ue[a];
            }
            out.l2 += quad_weight * h * h * v * v;
            out.h1_semi += quad_weight * (dx * dx + dy * dy);
        }
    }
    return out;
}

NormReport norms(const StructuredGrid2D& grid, std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw_argument("norms: fields have different lengths");
    std::vector<double> diff(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) diff[i] = u[i] - v[i];
    const auto d = norm_squares(grid, diff);
    const auto uu = norm_squares(grid, u);
    return {std::sqrt(d.l2), std::sqrt(d.l2 + d.h1_semi), std::sqrt(uu.l2), std::sqrt(uu.l2 + uu.h1_semi)};
}

double integrate(const StructuredGrid2D& grid, std::span<const double> u) {
    if (u.size() != static_cast<std::size_t>(grid.node_count())) throw_argument("integrate: field length does not match grid");
    const double h = grid.h();
    double sum = 0.0;
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        double s = 0.0;
        for (int a = 0; a < 4; ++a) s += u[static_cast<std::size_t>(nodes[a])];
        sum += 0.25 * h * h * s;
    }
    return sum;
}

}  // namespace tfhom
