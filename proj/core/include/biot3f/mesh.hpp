#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace biot3f {

using Index = int;
using Point2 = Eigen::Vector2d;

enum class BoundaryTag : std::uint8_t { Dirichlet, Neumann };

/// Predicate evaluated at a boundary edge midpoint. True marks the edge Neumann.
using NeumannPredicate = std::function<bool(const Point2&)>;

struct BoundaryEdge {
    Index edge;
    BoundaryTag tag;
};

/// Uniform triangulation of an axis-aligned rectangle.
///
/// Edges are stored with their vertex pair sorted ascending. Each edge knows
/// the one or two triangles that share it; `triangle_edges[t][k]` is the edge
/// joining local vertices k and (k+1)%3 of triangle t. The mesh is immutable
/// once built.
class Mesh {
public:
    Mesh(std::vector<Point2> vertices,
         std::vector<std::array<Index, 3>> triangles,
         const NeumannPredicate& neumann);

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<std::array<Index, 3>>& triangles() const { return triangles_; }
    const std::vector<std::array<Index, 2>>& edges() const { return edges_; }
    const std::vector<std::array<Index, 2>>& edge_triangles() const { return edge_triangles_; }
    const std::vector<std::array<Index, 3>>& triangle_edges() const { return triangle_edges_; }
    const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

    Index num_vertices() const { return static_cast<Index>(vertices_.size()); }
    Index num_triangles() const { return static_cast<Index>(triangles_.size()); }
    Index num_edges() const { return static_cast<Index>(edges_.size()); }

    /// Max over triangles of the longest edge.
    double h() const { return h_; }

    double signed_area(Index triangle) const;
    Point2 edge_midpoint(Index edge) const;
    bool is_boundary_edge(Index edge) const { return edge_triangles_[edge][1] < 0; }

    /// Outward unit normal of a boundary edge.
    Point2 outward_normal(Index edge) const;

    /// Number of boundary edges carrying `tag`.
    Index count_boundary(BoundaryTag tag) const;

    /// Vertices lying on at least one Dirichlet edge (closed Dirichlet set).
    std::vector<Index> dirichlet_vertices() const;
    /// Edges tagged Dirichlet.
    std::vector<Index> dirichlet_edges() const;

    bool has_neumann() const { return count_boundary(BoundaryTag::Neumann) > 0; }

private:
    std::vector<Point2> vertices_;
    std::vector<std::array<Index, 3>> triangles_;
    std::vector<std::array<Index, 2>> edges_;
    std::vector<std::array<Index, 2>> edge_triangles_;
    std::vector<std::array<Index, 3>> triangle_edges_;
    std::vector<BoundaryEdge> boundary_edges_;
    double h_ = 0.0;
};

/// Structured mesh of [x0,x1]x[y0,y1] with nx*ny cells, each cell split by the
/// south-west to north-east diagonal.
Mesh build_rectangle(double x0, double x1, double y0, double y1, int nx, int ny,
                     const NeumannPredicate& neumann = {});

Mesh build_unit_square(int n, const NeumannPredicate& neumann = {});

/// Meshes for n = n0, 2 n0, 4 n0, ... (`levels` of them).
std::vector<Mesh> refine_sequence(int n0, int levels, const NeumannPredicate& neumann = {});

/// Legacy ASCII VTK unstructured grid (POINTS / CELLS / CELL_TYPES=5).
void write_vtk(std::ostream& os, const Mesh& mesh);

} // namespace biot3f
