#include "biot3f/sparse_matrix.hpp"

#include "biot3f/error.hpp"

#include <algorithm>
#include <cmath>

namespace biot3f {

CsrMatrix CsrMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets)
{
    BIOT3F_THROW_IF(rows < 0 || cols < 0, InvalidArgument, "CsrMatrix: negative size");
    for (const auto& t : triplets) {
        BIOT3F_THROW_IF(t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols, InvalidArgument,
                        "CsrMatrix: triplet out of range");
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    CsrMatrix m(rows, cols);
    m.col_idx_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    for (std::size_t k = 0; k < triplets.size();) {
        const Index r = triplets[k].row, c = triplets[k].col;
        double sum = 0.0;
        for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) sum += triplets[k].value;
        m.col_idx_.push_back(c);
        m.values_.push_back(sum);
        ++m.row_ptr_[static_cast<std::size_t>(r) + 1];
    }
    for (Index r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

CsrMatrix CsrMatrix::identity(Index n)
{
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, n, std::move(t));
}

CsrMatrix CsrMatrix::from_dense(const Eigen::MatrixXd& dense, double drop_below)
{
    std::vector<Triplet> t;
    for (Index i = 0; i < dense.rows(); ++i) {
        for (Index j = 0; j < dense.cols(); ++j) {
            if (std::abs(dense(i, j)) > drop_below) t.push_back({i, j, dense(i, j)});
        }
    }
    return from_triplets(static_cast<Index>(dense.rows()), static_cast<Index>(dense.cols()), std::move(t));
}

double CsrMatrix::coeff(Index i, Index j) const
{
    const auto begin = col_idx_.begin() + row_ptr_[i];
    const auto end = col_idx_.begin() + row_ptr_[i + 1];
    const auto it = std::lower_bound(begin, end, j);
    return (it != end && *it == j) ? values_[static_cast<std::size_t>(it - col_idx_.begin())] : 0.0;
}

Eigen::VectorXd CsrMatrix::multiply(const Eigen::VectorXd& x) const
{
    BIOT3F_THROW_IF(x.size() != cols_, InvalidArgument, "CsrMatrix::multiply: size mismatch");
    Eigen::VectorXd y(rows_);
    for (Index i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_idx_[k]];
        y[i] = s;
    }
    return y;
}

Eigen::VectorXd CsrMatrix::multiply_transpose(const Eigen::VectorXd& x) const
{
    BIOT3F_THROW_IF(x.size() != rows_, InvalidArgument, "CsrMatrix::multiply_transpose: size mismatch");
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols_);
    for (Index i = 0; i < rows_; ++i) {
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) y[col_idx_[k]] += values_[k] * x[i];
    }
    return y;
}

CsrMatrix CsrMatrix::transpose() const
{
    std::vector<Triplet> t;
    t.reserve(values_.size());
    for (Index i = 0; i < rows_; ++i) {
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) t.push_back({col_idx_[k], i, values_[k]});
    }
    return from_triplets(cols_, rows_, std::move(t));
}

CsrMatrix CsrMatrix::scaled(double factor) const
{
    CsrMatrix out = *this;
    for (double& v : out.values_) v *= factor;
    return out;
}

double CsrMatrix::max_abs() const
{
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double CsrMatrix::norm_inf() const
{
    double m = 0.0;
    for (Index i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(values_[k]);
        m = std::max(m, s);
    }
    return m;
}

bool CsrMatrix::is_symmetric(double rel_tol) const
{
    if (rows_ != cols_) return false;
    const double tol = rel_tol * max_abs();
    for (Index i = 0; i < rows_; ++i) {
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            if (std::abs(values_[k] - coeff(col_idx_[k], i)) > tol) return false;
        }
    }
    // Missing mirror entries read as zero, so one pass covers both patterns.
    return true;
}

Eigen::MatrixXd CsrMatrix::to_dense() const
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
    for (Index i = 0; i < rows_; ++i) {
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d(i, col_idx_[k]) = values_[k];
    }
    return d;
}

EigenSparse CsrMatrix::to_eigen() const
{
    std::vector<Eigen::Triplet<double, int>> t;
    t.reserve(values_.size());
    for (Index i = 0; i < rows_; ++i) {
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) t.emplace_back(i, col_idx_[k], values_[k]);
    }
    EigenSparse m(rows_, cols_);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

void CsrMatrix::append_to(std::vector<Triplet>& out, Index row_offset, Index col_offset, double scale) const
{
    for (Index i = 0; i < rows_; ++i) {
        for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            out.push_back({i + row_offset, col_idx_[k] + col_offset, scale * values_[k]});
        }
    }
}

} // namespace biot3f
