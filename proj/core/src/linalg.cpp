#include "biot3f/linalg.hpp"

#include "biot3f/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

#include <string>

namespace biot3f {

struct Factorization::Impl {
    Eigen::SparseLU<EigenSparse, Eigen::COLAMDOrdering<int>> lu;
};

Factorization::Factorization(const CsrMatrix& matrix)
    : impl_(std::make_unique<Impl>()), size_(matrix.rows())
{
    BIOT3F_THROW_IF(matrix.rows() != matrix.cols(), InvalidArgument, "factorize: matrix must be square");
    EigenSparse a = matrix.to_eigen();
    a.makeCompressed();
    impl_->lu.analyzePattern(a);
    impl_->lu.factorize(a);
    BIOT3F_THROW_IF(impl_->lu.info() != Eigen::Success, SingularMatrix,
                    "factorize: singular matrix (" + impl_->lu.lastErrorMessage() + ")");
}

Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& rhs) const
{
    BIOT3F_THROW_IF(rhs.size() != size_, InvalidArgument,
                    "solve: right-hand side has " + std::to_string(rhs.size()) + " entries, expected "
                        + std::to_string(size_));
    Eigen::VectorXd x = impl_->lu.solve(rhs);
    return x;
}

Factorization factorize(const CsrMatrix& matrix)
{
    return Factorization(matrix);
}

Eigen::VectorXd solve(const Factorization& factorization, const Eigen::VectorXd& rhs)
{
    return factorization.solve(rhs);
}

Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M)
{
    BIOT3F_THROW_IF(S.rows() != S.cols() || M.rows() != M.cols() || S.rows() != M.rows(), InvalidArgument,
                    "generalized_eigenvalues: size mismatch");
    BIOT3F_THROW_IF(S.rows() > max_dense_eigen_size, InvalidArgument,
                    "generalized_eigenvalues: problem exceeds the dense size limit");
    Eigen::LLT<Eigen::MatrixXd> chol(M);
    BIOT3F_THROW_IF(chol.info() != Eigen::Success, InvalidArgument,
                    "generalized_eigenvalues: M is not symmetric positive definite");

    // Reduce to L^-1 S L^-T and use the symmetric QR solver.
    const Eigen::MatrixXd left = chol.matrixL().solve(S);
    Eigen::MatrixXd reduced = chol.matrixL().solve(left.transpose()).transpose();
    reduced = 0.5 * (reduced + reduced.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced, Eigen::EigenvaluesOnly);
    BIOT3F_THROW_IF(es.info() != Eigen::Success, Error, "generalized_eigenvalues: eigensolver failed");
    return es.eigenvalues();
}

double smallest_generalized_eigenvalue(const CsrMatrix& S, const CsrMatrix& M)
{
    return generalized_eigenvalues(S.to_dense(), M.to_dense())[0];
}

} // namespace biot3f
