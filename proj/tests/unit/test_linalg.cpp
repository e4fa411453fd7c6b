#include "biot3f/error.hpp"
#include "biot3f/linalg.hpp"

#include <gtest/gtest.h>

#include <Eigen/LU>

#include <random>

using namespace biot3f;

namespace {

CsrMatrix random_sparse(int n, unsigned seed)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i) {
        t.push_back({i, i, 4.0 + d(gen)});
        for (int k = 0; k < 3; ++k) t.push_back({i, static_cast<Index>(gen() % n), 0.5 * d(gen)});
    }
    return CsrMatrix::from_triplets(n, n, t);
}

Eigen::MatrixXd random_spd(int n, std::mt19937& gen)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = d(gen);
    }
    return a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
}

// Roots of det(S - x M) located by a sign-change scan and bisection.
std::vector<double> brute_force_eigenvalues(const Eigen::MatrixXd& S, const Eigen::MatrixXd& M, double upper)
{
    auto f = [&](double x) { return (S - x * M).determinant(); };
    std::vector<double> roots;
    const int samples = 200000;
    double a = 0.0, fa = f(a);
    for (int k = 1; k <= samples; ++k) {
        double b = upper * k / samples, fb = f(b);
        if (fa == 0.0 || fa * fb < 0.0) {
            double lo = a, hi = b;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

} // namespace

TEST(Factorization, SolvesWithinResidualBound)
{
    const CsrMatrix a = random_sparse(200, 1);
    const Factorization f = factorize(a);
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(200, -1.0, 2.0);
    const Eigen::VectorXd x = solve(f, b);
    const double bound = 1e-10 * (a.norm_inf() * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>());
    EXPECT_LE((a.multiply(x) - b).lpNorm<Eigen::Infinity>(), bound);
}

TEST(Factorization, ConstructedRightSide)
{
    const CsrMatrix a = random_sparse(150, 2);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(150);
    EXPECT_LE((factorize(a).solve(a.multiply(ones)) - ones).lpNorm<Eigen::Infinity>(), 1e-10);
}

TEST(Factorization, ZeroRightSideGivesZero)
{
    const CsrMatrix a = random_sparse(50, 3);
    EXPECT_EQ(factorize(a).solve(Eigen::VectorXd::Zero(50)).lpNorm<Eigen::Infinity>(), 0.0);
}

TEST(Factorization, IdentityAndSmallSystems)
{
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);
    EXPECT_EQ(factorize(CsrMatrix::identity(4)).solve(b), b);
    Eigen::MatrixXd d(2, 2);
    d << 0, 1, 1, 0;  // needs pivoting
    const Eigen::VectorXd x = factorize(CsrMatrix::from_dense(d)).solve(Eigen::Vector2d(3, 5));
    EXPECT_NEAR(x[0], 5.0, 1e-15);
    EXPECT_NEAR(x[1], 3.0, 1e-15);
}

TEST(Factorization, RejectsSingularAndNonSquare)
{
    Eigen::MatrixXd d(2, 2);
    d << 1, 2, 2, 4;
    EXPECT_THROW(factorize(CsrMatrix::from_dense(d)), SingularMatrix);
    EXPECT_THROW(factorize(CsrMatrix(2, 3)), InvalidArgument);
    EXPECT_THROW(factorize(CsrMatrix::identity(3)).solve(Eigen::VectorXd::Ones(2)), InvalidArgument);
}

TEST(Factorization, FactorOnceMatchesFreshFactorizations)
{
    const CsrMatrix a = random_sparse(120, 4);
    const Factorization once = factorize(a);
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        Eigen::VectorXd b(120);
        for (auto& v : b) v = d(gen);
        EXPECT_LE((once.solve(b) - factorize(a).solve(b)).lpNorm<Eigen::Infinity>(), 1e-12);
    }
}

TEST(Factorization, Deterministic)
{
    const CsrMatrix a = random_sparse(80, 6);
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(80, 0.0, 1.0);
    const Eigen::VectorXd x1 = factorize(a).solve(b);
    const Eigen::VectorXd x2 = factorize(a).solve(b);
    EXPECT_EQ(x1, x2);
}

TEST(GeneralizedEigen, TrivialPairs)
{
    const CsrMatrix s = CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 2.0}});
    EXPECT_NEAR(smallest_generalized_eigenvalue(s, CsrMatrix::identity(2)), 1.0, 1e-14);
    std::mt19937 gen(9);
    const Eigen::MatrixXd m = random_spd(5, gen);
    const CsrMatrix ms = CsrMatrix::from_dense(m);
    EXPECT_NEAR(smallest_generalized_eigenvalue(ms, ms), 1.0, 1e-12);
}

TEST(GeneralizedEigen, MatchesCharacteristicPolynomialRoots)
{
    std::mt19937 gen(21);
    for (int trial = 0; trial < 3; ++trial) {
        const Eigen::MatrixXd s = random_spd(4, gen);
        const Eigen::MatrixXd m = random_spd(4, gen);
        const Eigen::VectorXd ev = generalized_eigenvalues(s, m);
        const auto roots = brute_force_eigenvalues(s, m, 1.5 * ev.maxCoeff());
        ASSERT_EQ(roots.size(), 4u);
        for (int k = 0; k < 4; ++k) EXPECT_NEAR(ev[k], roots[static_cast<std::size_t>(k)], 1e-8 * ev[k]);
        EXPECT_NEAR(smallest_generalized_eigenvalue(CsrMatrix::from_dense(s), CsrMatrix::from_dense(m)), roots[0],
                    1e-8 * roots[0]);
    }
}

TEST(GeneralizedEigen, RejectsIndefiniteMassAndOversize)
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
    m(1, 1) = -1.0;
    EXPECT_THROW(generalized_eigenvalues(Eigen::MatrixXd::Identity(2, 2), m), InvalidArgument);
    EXPECT_THROW(generalized_eigenvalues(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)),
                 InvalidArgument);
    EXPECT_THROW(smallest_generalized_eigenvalue(CsrMatrix::identity(max_dense_eigen_size + 1),
                                                 CsrMatrix::identity(max_dense_eigen_size + 1)),
                 InvalidArgument);
}
