#include "biot3f/error.hpp"
#include "biot3f/manufactured.hpp"
#include "biot3f/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace biot3f;

TEST(Mesh, UnitSquareCounts)
{
    const Mesh m = build_unit_square(8);
    EXPECT_EQ(m.num_vertices(), 81);
    EXPECT_EQ(m.num_triangles(), 128);
    EXPECT_EQ(m.boundary_edges().size(), 32u);
    EXPECT_EQ(m.num_edges(), 208);
    EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_triangles(), 1);
}

TEST(Mesh, CountsForSeveralSizes)
{
    for (int n : {1, 2, 3, 5, 12}) {
        const Mesh m = build_unit_square(n);
        EXPECT_EQ(m.num_triangles(), 2 * n * n);
        EXPECT_EQ(m.num_vertices(), (n + 1) * (n + 1));
        EXPECT_EQ(static_cast<int>(m.boundary_edges().size()), 4 * n);
        EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_triangles(), 1);
        EXPECT_NEAR(m.h(), std::sqrt(2.0) / n, 1e-15);
    }
}

TEST(Mesh, AreasPositiveAndEqual)
{
    const int n = 7;
    const Mesh m = build_unit_square(n);
    const double expected = 1.0 / (2.0 * n * n);
    for (Index t = 0; t < m.num_triangles(); ++t) {
        EXPECT_NEAR(m.signed_area(t), expected, 1e-15 * expected);
    }
}

TEST(Mesh, DiagonalRunsSouthWestToNorthEast)
{
    const Mesh m = build_unit_square(1);
    bool found = false;
    for (const auto& e : m.edges()) {
        const Point2 a = m.vertices()[e[0]];
        const Point2 b = m.vertices()[e[1]];
        if ((a - Point2(0, 0)).norm() < 1e-15 && (b - Point2(1, 1)).norm() < 1e-15) found = true;
    }
    EXPECT_TRUE(found);
}

TEST(Mesh, EdgeAdjacency)
{
    const Mesh m = build_unit_square(5);
    int boundary = 0;
    for (Index e = 0; e < m.num_edges(); ++e) {
        const auto& tris = m.edge_triangles()[e];
        EXPECT_GE(tris[0], 0);
        if (tris[1] < 0) {
            ++boundary;
            EXPECT_TRUE(m.is_boundary_edge(e));
        }
    }
    EXPECT_EQ(boundary, 20);
    for (Index t = 0; t < m.num_triangles(); ++t) {
        for (int k = 0; k < 3; ++k) {
            const auto& e = m.edges()[m.triangle_edges()[t][k]];
            const Index a = m.triangles()[t][k];
            const Index b = m.triangles()[t][(k + 1) % 3];
            EXPECT_EQ(std::min(a, b), e[0]);
            EXPECT_EQ(std::max(a, b), e[1]);
        }
    }
}

TEST(Mesh, NeumannPredicateOnRightSide)
{
    const Mesh m = build_unit_square(8, neumann_on_right_side());
    EXPECT_EQ(m.count_boundary(BoundaryTag::Neumann), 8);
    EXPECT_EQ(m.count_boundary(BoundaryTag::Dirichlet), 24);
    EXPECT_TRUE(m.has_neumann());
    for (const auto& be : m.boundary_edges()) {
        const bool right = std::abs(m.edge_midpoint(be.edge).x() - 1.0) < 1e-12;
        EXPECT_EQ(be.tag == BoundaryTag::Neumann, right);
    }
    // The corner vertices (1,0) and (1,1) close the Dirichlet set.
    EXPECT_EQ(m.dirichlet_vertices().size(), 25u);
}

TEST(Mesh, OutwardNormals)
{
    const Mesh m = build_unit_square(3);
    for (const auto& be : m.boundary_edges()) {
        const Point2 mid = m.edge_midpoint(be.edge);
        const Point2 n = m.outward_normal(be.edge);
        EXPECT_NEAR(n.norm(), 1.0, 1e-15);
        EXPECT_GT((mid - Point2(0.5, 0.5)).dot(n), 0.0);
    }
}

TEST(Mesh, RejectsInvalidInput)
{
    EXPECT_THROW(build_unit_square(0), InvalidArgument);
    EXPECT_THROW(build_unit_square(-3), InvalidArgument);
    // All-Neumann boundary leaves no Dirichlet part.
    EXPECT_THROW(build_unit_square(2, [](const Point2&) { return true; }), InvalidArgument);
    // Clockwise triangle.
    std::vector<Point2> v{{0, 0}, {1, 0}, {0, 1}};
    EXPECT_THROW(Mesh(v, {{0, 2, 1}}, {}), InvalidArgument);
}

TEST(Mesh, RefineSequenceNested)
{
    const auto seq = refine_sequence(8, 4);
    ASSERT_EQ(seq.size(), 4u);
    const int expected[] = {8, 16, 32, 64};
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(seq[k].num_triangles(), 2 * expected[k] * expected[k]);

    const auto single = refine_sequence(1, 1);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].num_triangles(), 2);

    const auto pair = refine_sequence(8, 2);
    std::set<std::pair<long long, long long>> fine;
    for (const auto& x : pair[1].vertices()) fine.insert({std::llround(x.x() * 1e9), std::llround(x.y() * 1e9)});
    for (const auto& x : pair[0].vertices()) {
        EXPECT_TRUE(fine.count({std::llround(x.x() * 1e9), std::llround(x.y() * 1e9)}));
    }
}

TEST(Mesh, LatticeCoordinatesExact)
{
    const Mesh m = build_unit_square(3);
    EXPECT_EQ(m.vertices().back().x(), 1.0);
    EXPECT_EQ(m.vertices().back().y(), 1.0);
    EXPECT_EQ(m.vertices()[1].x(), 1.0 / 3.0);
}

TEST(Mesh, VtkOutput)
{
    std::ostringstream os;
    write_vtk(os, build_unit_square(2));
    const std::string s = os.str();
    EXPECT_NE(s.find("# vtk DataFile Version"), std::string::npos);
    EXPECT_NE(s.find("POINTS 9"), std::string::npos);
    EXPECT_NE(s.find("CELLS 8 32"), std::string::npos);
    EXPECT_NE(s.find("CELL_TYPES 8"), std::string::npos);
}
