#pragma once

#include "biot3f/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <vector>

namespace biot3f {

struct Triplet {
    Index row;
    Index col;
    double value;
};

using EigenSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// Compressed sparse row matrix. Column indices are strictly increasing within
/// each row and entries are unique.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), row_ptr_(static_cast<std::size_t>(rows) + 1, 0) {}

    /// Duplicates are summed in the order they appear after a stable sort on (row, col),
    /// so the result depends only on the triplet sequence.
    static CsrMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);
    static CsrMatrix identity(Index n);
    static CsrMatrix from_dense(const Eigen::MatrixXd& dense, double drop_below = 0.0);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index nnz() const { return static_cast<Index>(values_.size()); }

    const std::vector<Index>& row_ptr() const { return row_ptr_; }
    const std::vector<Index>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    /// Entry (i, j); zero when not stored.
    double coeff(Index i, Index j) const;

    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& x) const;
    CsrMatrix transpose() const;
    CsrMatrix scaled(double factor) const;

    double max_abs() const;
    /// Infinity norm (max absolute row sum).
    double norm_inf() const;
    /// ||X - X^T||_max <= rel_tol * ||X||_max.
    bool is_symmetric(double rel_tol = 1e-12) const;

    Eigen::MatrixXd to_dense() const;
    EigenSparse to_eigen() const;

    /// Appends every entry, offset by (row_offset, col_offset) and scaled.
    void append_to(std::vector<Triplet>& out, Index row_offset, Index col_offset, double scale = 1.0) const;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Index> row_ptr_{0};
    std::vector<Index> col_idx_;
    std::vector<double> values_;
};

} // namespace biot3f
