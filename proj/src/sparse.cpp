#include "tfhom/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "tfhom/error.hpp"

namespace tfhom {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
    if (rows < 0 || cols < 0) throw_argument("from_triplets: negative dimension");
    for (const auto& t : triplets) {
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
            throw_argument("from_triplets: index out of range");
        }
    }
    // stable so duplicates are summed in insertion order
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
    m.col_indices_.reserve(triplets.size() / 4 + 1);
    m.values_.reserve(triplets.size() / 4 + 1);
    std::size_t k = 0;
    for (int r = 0; r < rows; ++r) {
        while (k < triplets.size() && triplets[k].row == r) {
            const int c = triplets[k].col;
            double sum = 0.0;
            while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) {
                sum += triplets[k].value;
                ++k;
            }
            m.col_indices_.push_back(c);
            m.values_.push_back(sum);
        }
        m.row_offsets_[static_cast<std::size_t>(r) + 1] = static_cast<int>(m.values_.size());
    }
    return m;
}

SparseMatrix SparseMatrix::identity(int n) {
    std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) t.push_back({static_cast<int>(i), static_cast<int>(i), d[i]});
    const int n = static_cast<int>(d.size());
    return from_triplets(n, n, std::move(t));
}

double SparseMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw_argument("SparseMatrix::at: index out of range");
    const auto begin = col_indices_.begin() + row_offsets_[static_cast<std::size_t>(r)];
    const auto end = col_indices_.begin() + row_offsets_[static_cast<std::size_t>(r) + 1];
    const auto it = std::lower_bound(begin, end, c);
    if (it == end || *it != c) return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

std::vector<double> SparseMatrix::diagonal_entries() const {
    std::vector<double> d(static_cast<std::size_t>(std::min(rows_, cols_)), 0.0);
    for (int r = 0; r < static_cast<int>(d.size()); ++r) d[static_cast<std::size_t>(r)] = at(r, r);
    return d;
}

void SparseMatrix::matvec(std::span<const double> x, std::span<double> y) const {
    if (x.size() != static_cast<std::size_t>(cols_) || y.size() != static_cast<std::size_t>(rows_)) {
        throw_argument("matvec: dimension mismatch (" + std::to_string(rows_) + "x" + std::to_string(cols_) +
                       " times " + std::to_string(x.size()) + ")");
    }
    const int* offsets = row_offsets_.data();
    const int* cols = col_indices_.data();
    const double* vals = values_.data();
    for (int r = 0; r < rows_; ++r) {
        double sum = 0.0;
        for (int k = offsets[r]; k < offsets[r + 1]; ++k) sum += vals[k] * x[static_cast<std::size_t>(cols[k])];
        y[static_cast<std::size_t>(r)] = sum;
    }
}

double SparseMatrix::asymmetry() const {
    double max_entry = 0.0;
    double max_diff = 0.0;
    for (int r = 0; r < rows_; ++r) {
        for (int k = row_offsets_[static_cast<std::size_t>(r)]; k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
            const int c = col_indices_[static_cast<std::size_t>(k)];
            const double v = values_[static_cast<std::size_t>(k)];
            max_entry = std::max(max_entry, std::abs(v));
            const double mirrored = (c < rows_ && r < cols_) ? at(c, r) : 0.0;
            max_diff = std::max(max_diff, std::abs(v - mirrored));
        }
    }
    return max_entry > 0.0 ? max_diff / max_entry : 0.0;
}

SparseMatrix SparseMatrix::without_index(int index) const {
    if (index < 0 || index >= rows_ || index >= cols_) throw_argument("without_index: index out of range");
    std::vector<Triplet> t;
    t.reserve(values_.size());
    for (int r = 0; r < rows_; ++r) {
        if (r == index) continue;
        for (int k = row_offsets_[static_cast<std::size_t>(r)]; k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
            const int c = col_indices_[static_cast<std::size_t>(k)];
            if (c == index) continue;
            t.push_back({r > index ? r - 1 : r, c > index ? c - 1 : c, values_[static_cast<std::size_t>(k)]});
        }
    }
    return from_triplets(rows_ - 1, cols_ - 1, std::move(t));
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x) {
    std::vector<double> y(static_cast<std::size_t>(a.rows()));
    a.matvec(x, y);
    return y;
}

SparseMatrix linear_combination(double alpha, const SparseMatrix& a, double beta, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw_argument("linear_combination: dimension mismatch");
    std::vector<Triplet> t;
    t.reserve(a.nonzeros() + b.nonzeros());
    const std::pair<double, const SparseMatrix*> terms[] = {{alpha, &a}, {beta, &b}};
    for (const auto& [s, m] : terms) {
        for (int r = 0; r < m->rows(); ++r) {
            for (int k = m->row_offsets()[static_cast<std::size_t>(r)];
                 k < m->row_offsets()[static_cast<std::size_t>(r) + 1]; ++k) {
                t.push_back({r, m->col_indices()[static_cast<std::size_t>(k)], s * m->values()[static_cast<std::size_t>(k)]});
            }
        }
    }
    return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

CgResult cg_solve(const SparseMatrix& a, std::span<const double> b, const CgOptions& options,
                  std::span<const double> initial_guess) {
    const std::size_t n = b.size();
    if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != n) {
        throw_argument("cg_solve: matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                       " but right-hand side has length " + std::to_string(n));
    }
    if (!initial_guess.empty() && initial_guess.size() != n) throw_argument("cg_solve: initial guess has wrong length");

    CgResult result;
    result.x.assign(n, 0.0);
    if (!initial_guess.empty()) std::copy(initial_guess.begin(), initial_guess.end(), result.x.begin());

    const double b_norm = norm2(b);
    if (b_norm == 0.0) {
        std::fill(result.x.begin(), result.x.end(), 0.0);
        result.report = {0, 0.0, true};
        return result;
    }
    const int max_iter = options.max_iterations > 0 ? options.max_iterations : static_cast<int>(10 * std::max<std::size_t>(n, 1));

    std::vector<double> inv_diag(n, 1.0);
    if (options.preconditioner == Preconditioner::jacobi) {
        const auto d = a.diagonal_entries();
        for (std::size_t i = 0; i < n; ++i) {
            if (!(d[i] > 0.0)) throw_numerical("cg_solve: non-positive diagonal entry at row " + std::to_string(i));
            inv_diag[i] = 1.0 / d[i];
        }
    }

    std::vector<double> r(n), z(n), p(n), ap(n);
    a.matvec(result.x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    double rel = norm2(r) / b_norm;
    int iter = 0;
    if (rel > options.tolerance) {
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        p = z;
        double rz = dot(r, z);
        while (iter < max_iter) {
            a.matvec(p, ap);
            const double pap = dot(p, ap);
            if (!(pap > 0.0)) break;  // breakdown: matrix not SPD on this subspace
            const double step = rz / pap;
            double rr = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                result.x[i] += step * p[i];
                r[i] -= step * ap[i];
                rr += r[i] * r[i];
            }
            ++iter;
            rel = std::sqrt(rr) / b_norm;
            bool restart = false;
            if (rel <= options.tolerance) {
                // recurrence residual drifts; accept only on the true residual
                a.matvec(result.x, ap);
                for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
                rel = norm2(r) / b_norm;
                if (rel <= options.tolerance) break;
                restart = true;
            }
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
            const double rz_next = dot(r, z);
            const double beta = restart ? 0.0 : rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        if (rel > options.tolerance) {
            a.matvec(result.x, ap);
            for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
            rel = norm2(r) / b_norm;
        }
    }
    result.report = {iter, rel, rel <= options.tolerance};
    return result;
}

}  // namespace tfhom
