#pragma once

#include <span>
#include <vector>

namespace tfhom {

struct Triplet {
    int row;
    int col;
    double value;
};

/// Compressed sparse rows with sorted, duplicate-free column indices.
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Duplicates are summed in a fixed order, so assembly is deterministic.
    static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);
    static SparseMatrix identity(int n);
    static SparseMatrix diagonal(std::span<const double> d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nonzeros() const { return values_.size(); }

    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    double at(int r, int c) const;
    std::vector<double> diagonal_entries() const;

    void matvec(std::span<const double> x, std::span<double> y) const;

    /// Largest |A_ij - A_ji| relative to max |A_ij|.
    double asymmetry() const;

    /// Drops row and column `index`, renumbering the rest.
    SparseMatrix without_index(int index) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_offsets_{0};
    std::vector<int> col_indices_;
    std::vector<double> values_;
};

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x);

/// alpha*A + beta*B over the union of both patterns.
SparseMatrix linear_combination(double alpha, const SparseMatrix& a, double beta, const SparseMatrix& b);

enum class Preconditioner { none, jacobi };

struct CgOptions {
    double tolerance = 1e-10;
    int max_iterations = 0;  // 0 means 10 * dofs
    Preconditioner preconditioner = Preconditioner::jacobi;
};

struct SolveReport {
    int iterations = 0;
    double final_relative_residual = 0.0;
    bool converged = false;
};

struct CgResult {
    std::vector<double> x;
    SolveReport report;
};

/// Preconditioned conjugate gradients for SPD systems. `initial_guess` may be
/// empty (zero start). Non-convergence is reported, not thrown; a dimension
/// mismatch throws.
CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, const CgOptions& options = {},
                  std::span<const double> initial_guess = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace tfhom
