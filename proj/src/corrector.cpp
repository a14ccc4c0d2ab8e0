#include "tfhom/corrector.hpp"

#include <algorithm>
#include <cmath>

#include "tfhom/error.hpp"

namespace tfhom {

NodalGradient recover_gradient(const StructuredGrid2D& grid, std::span<const double> u0) {
    if (u0.size() != static_cast<std::size_t>(grid.node_count())) {
        throw_argument("recover_gradient: field length does not match grid");
    }
    const std::size_t nn = u0.size();
    const double h = grid.h();
    NodalGradient g{std::vector<double>(nn, 0.0), std::vector<double>(nn, 0.0)};
    std::vector<int> count(nn, 0);
    // corner a sits at reference (xi, eta) = corners[a]
    constexpr double corners[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int e = 0; e < grid.element_count(); ++e) {
        const auto nodes = grid.element_nodes(e);
        const double u[4] = {u0[static_cast<std::size_t>(nodes[0])], u0[static_cast<std::size_t>(nodes[1])],
                             u0[static_cast<std::size_t>(nodes[2])], u0[static_cast<std::size_t>(nodes[3])]};
        for (int a = 0; a < 4; ++a) {
            const double xi = corners[a][0];
            const double eta = corners[a][1];
            const double dx = ((u[1] - u[0]) * (1 - eta) + (u[2] - u[3]) * eta) / h;
            const double dy = ((u[3] - u[0]) * (1 - xi) + (u[2] - u[1]) * xi) / h;
            const auto node = static_cast<std::size_t>(nodes[a]);
            g.dx[node] += dx;
            g.dy[node] += dy;
            ++count[node];
        }
    }
    for (std::size_t k = 0; k < nn; ++k) {
        g.dx[k] /= count[k];
        g.dy[k] /= count[k];
    }
    return g;
}

double boundary_distance(Point x) { return std::min({x.x, 1.0 - x.x, x.y, 1.0 - x.y}); }

double cutoff_spatial(double eps, Point x) {
    if (!(eps > 0.0)) throw_argument("cutoff_spatial: eps must be positive");
    const double s = std::clamp(boundary_distance(x) / eps, 0.0, 1.0);
    const double smooth = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    return std::clamp(1.0 - smooth, 0.0, 1.0);
}

double cutoff_temporal(double theta, double t) {
    if (!(theta > 0.0)) throw_argument("cutoff_temporal: theta must be positive");
    if (t <= 0.5 * theta) return 0.0;
    if (t >= theta) return 1.0;
    return (t - 0.5 * theta) / (0.5 * theta);
}

std::vector<double> first_order_field(const StructuredGrid2D& grid, std::span<const double> u0, const CellSolution& cell,
                                      double eps, std::span<const double> weight) {
    if (!(eps > 0.0)) throw_argument("first_order_field: eps must be positive");
    if (!weight.empty() && weight.size() != u0.size()) throw_argument("first_order_field: weight has wrong length");
    const auto g = recover_gradient(grid, u0);
    std::vector<double> out(u0.begin(), u0.end());
    for (int k = 0; k < grid.node_count(); ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const Point x = grid.node(k);
        const Point y{x.x / eps, x.y / eps};
        const double w = weight.empty() ? 1.0 : weight[idx];
        if (w == 0.0) continue;
        out[idx] += eps * w * (cell.chi_at(0, y) * g.dx[idx] + cell.chi_at(1, y) * g.dy[idx]);
    }
    return out;
}

CorrectorField build_U1(const TimeFractionalRun& u0_run, const CellSolution& cell, double eps, int step) {
    const auto& u0 = u0_run.at(step);
    CorrectorField f;
    f.values = first_order_field(u0_run.grid, u0, cell, eps);
    f.step = step;
    f.time = u0_run.time(step);
    return f;
}

CorrectorField build_modified_u1(const TimeFractionalRun& u0_run, const CellSolution& cell, double eps, double theta,
                                 int step) {
    if (!(theta > 0.0) || theta > u0_run.final_time + 1e-12) {
        throw_argument("build_modified_u1: theta must lie in (0, T]");
    }
    const auto& u0 = u0_run.at(step);
    const auto& grid = u0_run.grid;
    const double t = u0_run.time(step);
    const double eta = cutoff_temporal(theta, t);
    std::vector<double> weight(u0.size());
    for (int k = 0; k < grid.node_count(); ++k) {
        weight[static_cast<std::size_t>(k)] = eta * (1.0 - cutoff_spatial(eps, grid.node(k)));
    }
    CorrectorField f;
    f.values = first_order_field(grid, u0, cell, eps, weight);
    f.step = step;
    f.time = t;
    f.modified = true;
    f.theta = theta;
    return f;
}

}  // namespace tfhom
