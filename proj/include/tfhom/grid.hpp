#pragma once

#include <array>
#include <vector>

namespace tfhom {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class BoundaryKind { dirichlet, periodic };

bool is_power_of_two(long long n);

/// Uniform n x n mesh of the unit square. Nodes are numbered i + j*(n+1),
/// elements i + j*n; element corners run counterclockwise from the lower-left.
class StructuredGrid2D {
public:
    StructuredGrid2D(int n, BoundaryKind kind);

    int n() const { return n_; }
    double h() const { return h_; }
    BoundaryKind boundary_kind() const { return kind_; }
    int nodes_per_side() const { return n_ + 1; }
    int node_count() const { return (n_ + 1) * (n_ + 1); }
    int element_count() const { return n_ * n_; }

    /// Nodes left after periodic identification (n^2), or node_count() otherwise.
    int identified_node_count() const;

    int node_index(int i, int j) const { return i + j * (n_ + 1); }
    Point node(int i, int j) const { return {i * h_, j * h_}; }
    Point node(int index) const { return node(index % (n_ + 1), index / (n_ + 1)); }

    std::array<int, 4> element_nodes(int e) const;
    Point element_origin(int e) const { return node(e % n_, e / n_); }

    bool on_boundary(int node_index) const;

private:
    int n_;
    double h_;
    BoundaryKind kind_;
};

/// Rejects n < 2 and n that is not a power of two.
StructuredGrid2D make_grid(int n, BoundaryKind kind);

/// Fractional parts of both coordinates, always in [0,1).
Point periodic_wrap(Point p);

/// Maps mesh nodes to unknowns. Constrained nodes (Dirichlet boundary) map to
/// `constrained`; periodic maps send right/top edge nodes to their left/bottom
/// representatives.
class DofMap {
public:
    static constexpr int constrained = -1;
    enum class Kind { interior_only, periodic_zero_mean, all_nodes };

    static DofMap dirichlet(const StructuredGrid2D& grid);
    static DofMap periodic(const StructuredGrid2D& grid);
    static DofMap all_nodes(const StructuredGrid2D& grid);

    Kind kind() const { return kind_; }
    int total_dofs() const { return total_dofs_; }
    int dof(int node) const { return node_to_dof_[static_cast<std::size_t>(node)]; }
    const std::vector<int>& node_to_dof() const { return node_to_dof_; }

    /// Gathers dof values from a nodal field; for periodic maps the
    /// representative node's value is taken.
    std::vector<double> restrict(const std::vector<double>& nodal) const;
    /// Scatters dof values back to all nodes; constrained nodes get zero.
    std::vector<double> extend(const std::vector<double>& dofs) const;

private:
    DofMap(Kind kind, std::vector<int> node_to_dof, int total);

    Kind kind_;
    std::vector<int> node_to_dof_;
    int total_dofs_;
};

}  // namespace tfhom
