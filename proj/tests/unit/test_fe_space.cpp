#include "biot3f/error.hpp"
#include "biot3f/fe_space.hpp"

#include <gtest/gtest.h>

#include <memory>
#include <random>

using namespace biot3f;

namespace {

std::shared_ptr<const Mesh> square(int n, NeumannPredicate pred = {})
{
    return std::make_shared<const Mesh>(build_unit_square(n, pred));
}

Eigen::Vector3d random_bary(std::mt19937& gen)
{
    std::uniform_real_distribution<double> d(0.0, 1.0);
    double a = d(gen), b = d(gen);
    if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
    }
    return {1.0 - a - b, a, b};
}

} // namespace

TEST(FESpace, DofCounts)
{
    const auto mesh = square(8);
    const FESpace u = make_space(mesh, SpaceKind::P2Vector);
    EXPECT_EQ(u.dof_count(), 578);
    EXPECT_EQ(u.dof_count(), 2 * 17 * 17);
    EXPECT_EQ(make_space(mesh, SpaceKind::P0Scalar).dof_count(), 128);
    const FESpace p = make_space(mesh, SpaceKind::P1Scalar);
    EXPECT_EQ(p.dof_count(), 81);
    EXPECT_EQ(p.dirichlet_dofs().size(), 32u);
    EXPECT_EQ(make_space(mesh, SpaceKind::P1Unconstrained).dof_count(), mesh->num_vertices());
    EXPECT_TRUE(make_space(mesh, SpaceKind::P1Unconstrained).dirichlet_dofs().empty());
    EXPECT_TRUE(make_space(mesh, SpaceKind::P0Scalar).dirichlet_dofs().empty());
    // Boundary P2 nodes: 4n vertices + 4n midpoints, two components each.
    EXPECT_EQ(u.dirichlet_dofs().size(), 2u * 64u);
}

TEST(FESpace, NeumannSideIsFree)
{
    const FESpace u = make_space(square(4, [](const Point2& x) { return std::abs(x.x() - 1.0) < 1e-12; }),
                                 SpaceKind::P2Vector);
    for (Index d : u.dirichlet_dofs()) {
        const Point2 x = u.node_points()[d / 2];
        const bool interior_of_right = std::abs(x.x() - 1.0) < 1e-12 && x.y() > 1e-12 && x.y() < 1.0 - 1e-12;
        EXPECT_FALSE(interior_of_right);
    }
    EXPECT_EQ(u.dirichlet_dofs().size(), 2u * (32u - 7u));
}

TEST(ReferenceElement, P1AtBarycenter)
{
    const ReferenceElement e(1);
    const Eigen::VectorXd v = e.values(Eigen::Vector3d::Constant(1.0 / 3.0));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(v[i], 1.0 / 3.0, 1e-15);
}

TEST(ReferenceElement, NodalKroneckerProperty)
{
    for (int deg : {0, 1, 2}) {
        const ReferenceElement e(deg);
        for (int j = 0; j < e.node_count(); ++j) {
            const Eigen::VectorXd v = e.values(e.nodes()[j]);
            for (int i = 0; i < e.node_count(); ++i) EXPECT_NEAR(v[i], i == j ? 1.0 : 0.0, 1e-15);
        }
    }
}

TEST(ReferenceElement, PartitionOfUnityAndGradientSum)
{
    std::mt19937 gen(3);
    for (int deg : {1, 2}) {
        const ReferenceElement e(deg);
        for (int k = 0; k < 5; ++k) {
            const Eigen::Vector3d b = random_bary(gen);
            EXPECT_NEAR(e.values(b).sum(), 1.0, 1e-14);
            EXPECT_LE(e.gradients(b).rowwise().sum().norm(), 1e-13);
        }
    }
}

TEST(ReferenceElement, GradientsMatchFiniteDifferences)
{
    const ReferenceElement e(2);
    const Eigen::Vector3d b(0.2, 0.3, 0.5);
    const double h = 1e-6;
    const auto g = e.gradients(b);
    const Eigen::VectorXd dxi = (e.values({b[0] - h, b[1] + h, b[2]}) - e.values({b[0] + h, b[1] - h, b[2]})) / (2 * h);
    const Eigen::VectorXd deta = (e.values({b[0] - h, b[1], b[2] + h}) - e.values({b[0] + h, b[1], b[2] - h})) / (2 * h);
    EXPECT_LE((g.row(0).transpose() - dxi).norm(), 1e-8);
    EXPECT_LE((g.row(1).transpose() - deta).norm(), 1e-8);
}

TEST(ReferenceElement, RejectsUnsupportedDegree)
{
    EXPECT_THROW(ReferenceElement(3), InvalidArgument);
    EXPECT_THROW(ReferenceElement(-1), InvalidArgument);
}

TEST(CellGeometry, RejectsDegenerateCell)
{
    const Mesh m({{0, 0}, {1, 0}, {0, 1}, {2, 0}}, {{0, 1, 2}}, {});
    EXPECT_NO_THROW(CellGeometry(m, 0));
    // A zero-area cell cannot be built into a mesh; check the constructor contract directly.
    EXPECT_THROW(Mesh({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}, {}), InvalidArgument);
}

TEST(FESpace, P2InterpolationReproducesQuadratics)
{
    const FESpace s = make_space(square(3), SpaceKind::P2Vector);
    const VectorField f = [](const Point2& x) {
        return Eigen::Vector2d(1.0 + 2.0 * x.x() - x.y() + 0.5 * x.x() * x.x() + 3.0 * x.x() * x.y(),
                               -0.25 * x.y() * x.y() + x.x());
    };
    const Eigen::VectorXd c = interpolate(s, f);
    std::mt19937 gen(11);
    const Mesh& m = s.mesh();
    for (int k = 0; k < 20; ++k) {
        const Index cell = static_cast<Index>(gen() % static_cast<unsigned>(m.num_triangles()));
        const Eigen::Vector3d b = random_bary(gen);
        const CellGeometry geo(m, cell);
        const Eigen::VectorXd phi = s.element().values(b);
        const Eigen::VectorXd local = gather(s, c, cell);
        Eigen::Vector2d v = Eigen::Vector2d::Zero();
        for (int a = 0; a < s.local_node_count(); ++a) v += phi[a] * local.segment<2>(2 * a);
        EXPECT_LE((v - f(geo.map(b))).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(FESpace, ConstructionIsDeterministic)
{
    const auto mesh = square(5);
    for (auto kind : {SpaceKind::P2Vector, SpaceKind::P1Scalar, SpaceKind::P0Scalar, SpaceKind::P1Unconstrained}) {
        const FESpace a = make_space(mesh, kind);
        const FESpace b = make_space(mesh, kind);
        EXPECT_EQ(a.cell_to_dofs(), b.cell_to_dofs());
        EXPECT_EQ(a.dirichlet_dofs(), b.dirichlet_dofs());
    }
}

TEST(FESpace, SharedEdgeMidpointsMatch)
{
    const FESpace s = make_space(square(3), SpaceKind::P2Vector);
    const Mesh& m = s.mesh();
    for (Index e = 0; e < m.num_edges(); ++e) {
        const auto& tris = m.edge_triangles()[e];
        if (tris[1] < 0) continue;
        // Each neighbour places a node at the edge midpoint; both must share its global index.
        std::vector<Index> found;
        for (Index t : {tris[0], tris[1]}) {
            for (Index node : s.cell_nodes(t)) {
                if ((s.node_points()[node] - m.edge_midpoint(e)).norm() < 1e-14) found.push_back(node);
            }
        }
        ASSERT_EQ(found.size(), 2u);
        EXPECT_EQ(found[0], found[1]);
    }
}

TEST(FESpace, EvalBasisGradientsArePhysical)
{
    const FESpace s = make_space(square(2), SpaceKind::P1Scalar);
    const std::vector<Eigen::Vector3d> pts{Eigen::Vector3d::Constant(1.0 / 3.0)};
    for (Index cell = 0; cell < s.mesh().num_triangles(); ++cell) {
        const BasisEval ev = eval_basis(s, cell, pts);
        // Gradient of the interpolant of x must be (1, 0).
        Eigen::Vector2d g = Eigen::Vector2d::Zero();
        for (int a = 0; a < 3; ++a) g += s.node_points()[s.cell_nodes(cell)[a]].x() * ev.gradients[0].col(a);
        EXPECT_NEAR(g.x(), 1.0, 1e-14);
        EXPECT_NEAR(g.y(), 0.0, 1e-14);
    }
}

TEST(FESpace, P0InterpolatesCentroid)
{
    const FESpace s = make_space(square(2), SpaceKind::P0Scalar);
    const Eigen::VectorXd c = interpolate(s, ScalarField([](const Point2& x) { return x.x() + 2.0 * x.y(); }));
    const Mesh& m = s.mesh();
    for (Index t = 0; t < m.num_triangles(); ++t) {
        Point2 centroid = Point2::Zero();
        for (Index v : m.triangles()[t]) centroid += m.vertices()[v] / 3.0;
        EXPECT_NEAR(c[t], centroid.x() + 2.0 * centroid.y(), 1e-15);
    }
}
