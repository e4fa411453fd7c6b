#pragma once

#include "biot3f/sparse_matrix.hpp"

#include <Eigen/Core>

#include <memory>

namespace biot3f {

/// Sparse LU factors of a square matrix: COLAMD column ordering with
/// threshold partial pivoting. Immutable once built; solve() is reentrant.
class Factorization {
public:
    explicit Factorization(const CsrMatrix& matrix);
    ~Factorization();
    Factorization(Factorization&&) noexcept;
    Factorization& operator=(Factorization&&) noexcept;

    Index size() const { return size_; }
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Index size_ = 0;
};

Factorization factorize(const CsrMatrix& matrix);
Eigen::VectorXd solve(const Factorization& factorization, const Eigen::VectorXd& rhs);

/// Matrices above this size are refused by the dense eigen path.
inline constexpr Index max_dense_eigen_size = 2000;

/// All eigenvalues of S x = lambda M x in ascending order (S symmetric, M SPD).
Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M);

/// Smallest lambda with S x = lambda M x.
double smallest_generalized_eigenvalue(const CsrMatrix& S, const CsrMatrix& M);

} // namespace biot3f
