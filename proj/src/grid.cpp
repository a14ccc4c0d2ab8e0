#include "tfhom/grid.hpp"

#include <cmath>
#include <string>

#include "tfhom/error.hpp"

namespace tfhom {

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

StructuredGrid2D::StructuredGrid2D(int n, BoundaryKind kind) : n_(n), h_(0.0), kind_(kind) {
    if (n < 2 || !is_power_of_two(n)) {
        throw_argument("grid size must be a power of two >= 2, got " + std::to_string(n));
    }
    h_ = 1.0 / n;  // exact for powers of two
}

int StructuredGrid2D::identified_node_count() const {
    return kind_ == BoundaryKind::periodic ? n_ * n_ : node_count();
}

std::array<int, 4> StructuredGrid2D::element_nodes(int e) const {
    const int i = e % n_;
    const int j = e / n_;
    const int base = node_index(i, j);
    return {base, base + 1, base + 1 + (n_ + 1), base + (n_ + 1)};
}

bool StructuredGrid2D::on_boundary(int index) const {
    const int i = index % (n_ + 1);
    const int j = index / (n_ + 1);
    return i == 0 || j == 0 || i == n_ || j == n_;
}

StructuredGrid2D make_grid(int n, BoundaryKind kind) { return StructuredGrid2D(n, kind); }

Point periodic_wrap(Point p) {
    auto frac = [](double v) {
        double f = v - std::floor(v);
        // tiny negatives round up to exactly 1.0
        return f >= 1.0 ? 0.0 : f;
    };
    return {frac(p.x), frac(p.y)};
}

DofMap::DofMap(Kind kind, std::vector<int> node_to_dof, int total)
    : kind_(kind), node_to_dof_(std::move(node_to_dof)), total_dofs_(total) {}

DofMap DofMap::dirichlet(const StructuredGrid2D& grid) {
    const int m = grid.nodes_per_side();
    std::vector<int> map(static_cast<std::size_t>(grid.node_count()), constrained);
    int next = 0;
    for (int j = 1; j < m - 1; ++j) {
        for (int i = 1; i < m - 1; ++i) {
            map[static_cast<std::size_t>(grid.node_index(i, j))] = next++;
        }
    }
    return DofMap(Kind::interior_only, std::move(map), next);
}

DofMap DofMap::periodic(const StructuredGrid2D& grid) {
    const int n = grid.n();
    std::vector<int> map(static_cast<std::size_t>(grid.node_count()));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            map[static_cast<std::size_t>(grid.node_index(i, j))] = (i % n) + (j % n) * n;
        }
    }
    return DofMap(Kind::periodic_zero_mean, std::move(map), n * n);
}

DofMap DofMap::all_nodes(const StructuredGrid2D& grid) {
    std::vector<int> map(static_cast<std::size_t>(grid.node_count()));
    for (std::size_t k = 0; k < map.size(); ++k) map[k] = static_cast<int>(k);
    return DofMap(Kind::all_nodes, std::move(map), grid.node_count());
}

std::vector<double> DofMap::restrict(const std::vector<double>& nodal) const {
    if (nodal.size() != node_to_dof_.size()) throw_argument("restrict: nodal field has wrong length");
    std::vector<double> out(static_cast<std::size_t>(total_dofs_), 0.0);
    std::vector<char> seen(out.size(), 0);
    for (std::size_t node = 0; node < nodal.size(); ++node) {
        const int d = node_to_dof_[node];
        if (d == constrained || seen[static_cast<std::size_t>(d)]) continue;
        seen[static_cast<std::size_t>(d)] = 1;
        out[static_cast<std::size_t>(d)] = nodal[node];
    }
    return out;
}

std::vector<double> DofMap::extend(const std::vector<double>& dofs) const {
    if (dofs.size() != static_cast<std::size_t>(total_dofs_)) throw_argument("extend: dof vector has wrong length");
    std::vector<double> out(node_to_dof_.size(), 0.0);
    for (std::size_t node = 0; node < out.size(); ++node) {
        const int d = node_to_dof_[node];
        if (d != constrained) out[node] = dofs[static_cast<std::size_t>(d)];
    }
    return out;
}

}  // namespace tfhom
