#include "biot3f/infsup.hpp"

#include "biot3f/assembly.hpp"
#include "biot3f/error.hpp"
#include "biot3f/fe_space.hpp"
#include "biot3f/linalg.hpp"
#include "biot3f/manufactured.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace biot3f {

std::string to_string(InfSupPair pair)
{
    switch (pair) {
    case InfSupPair::P2P0: return "p2-p0";
    case InfSupPair::P2P1: return "p2-p1";
    case InfSupPair::P1P1: return "p1-p1";
    }
    return "unknown";
}

InfSupPair parse_infsup_pair(const std::string& name)
{
    if (name == "p2-p0" || name == "p2-p0-p1") return InfSupPair::P2P0;
    if (name == "p2-p1" || name == "p2-p1-p1") return InfSupPair::P2P1;
    if (name == "p1-p1") return InfSupPair::P1P1;
    throw InvalidArgument("unknown inf-sup pair '" + name + "' (expected p2-p0, p2-p1 or p1-p1)");
}

double InfSupReport::min_beta() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) m = std::min(m, r.beta);
    return m;
}

double InfSupReport::max_beta() const
{
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.beta);
    return m;
}

namespace {

InfSupRow estimate_one(int n, InfSupPair pair)
{
    const auto mesh = std::make_shared<const Mesh>(build_unit_square(n, neumann_on_right_side()));
    const SpaceKind uk = pair == InfSupPair::P1P1 ? SpaceKind::P1Vector : SpaceKind::P2Vector;
    const SpaceKind qk = pair == InfSupPair::P2P0 ? SpaceKind::P0Scalar : SpaceKind::P1Unconstrained;
    const FESpace su = make_space(mesh, uk);
    const FESpace sq = make_space(mesh, qk);

    std::vector<char> fixed(static_cast<std::size_t>(su.dof_count()), 0);
    for (Index d : su.dirichlet_dofs()) fixed[static_cast<std::size_t>(d)] = 1;
    std::vector<Index> free;
    for (Index d = 0; d < su.dof_count(); ++d) {
        if (!fixed[static_cast<std::size_t>(d)]) free.push_back(d);
    }
    const auto nf = static_cast<Eigen::Index>(free.size());
    const Index nq = sq.dof_count();
    BIOT3F_THROW_IF(nf > max_dense_eigen_size || nq > max_dense_eigen_size, InvalidArgument,
                    "estimate_infsup: n=" + std::to_string(n) + " exceeds the dense size limit");

    const Eigen::MatrixXd s_full = assemble_vector_laplacian(su).to_dense();
    const Eigen::MatrixXd b_full = assemble_divergence(su, sq).to_dense();
    Eigen::MatrixXd S(nf, nf), B(nq, nf);
    for (Eigen::Index j = 0; j < nf; ++j) {
        B.col(j) = b_full.col(free[j]);
        for (Eigen::Index i = 0; i < nf; ++i) S(i, j) = s_full(free[i], free[j]);
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(S);
    BIOT3F_THROW_IF(llt.info() != Eigen::Success, SingularMatrix, "estimate_infsup: seminorm matrix not SPD");
    const Eigen::MatrixXd schur = B * llt.solve(B.transpose());
    const Eigen::VectorXd ev = generalized_eigenvalues(schur, assemble_mass(sq, sq).to_dense());

    const double tol = infsup_kernel_tolerance * std::max(ev.maxCoeff(), 1.0);
    InfSupRow row{n, static_cast<int>(nf), static_cast<int>(nq), 0.0, 0};
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev[k] <= tol) {
            ++row.kernel_dim;
        } else if (row.beta == 0.0) {
            row.beta = std::sqrt(ev[k]);
        }
    }
    return row;
}

} // namespace

InfSupReport estimate_infsup(const std::vector<int>& ns, InfSupPair pair)
{
    BIOT3F_THROW_IF(ns.empty(), InvalidArgument, "estimate_infsup: no meshes given");
    InfSupReport report{pair, {}};
    for (int n : ns) {
        BIOT3F_THROW_IF(n < 1, InvalidArgument, "estimate_infsup: n must be >= 1");
        report.rows.push_back(estimate_one(n, pair));
    }
    return report;
}

} // namespace biot3f
