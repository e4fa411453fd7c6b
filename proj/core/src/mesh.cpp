#include "biot3f/mesh.hpp"

#include "biot3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>

namespace biot3f {

Mesh::Mesh(std::vector<Point2> vertices,
           std::vector<std::array<Index, 3>> triangles,
           const NeumannPredicate& neumann)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles))
{
    const Index nv = num_vertices();
    std::map<std::pair<Index, Index>, Index> lookup;
    triangle_edges_.resize(triangles_.size());

    for (Index t = 0; t < num_triangles(); ++t) {
        const auto& tri = triangles_[t];
        for (int k = 0; k < 3; ++k) {
            BIOT3F_THROW_IF(tri[k] < 0 || tri[k] >= nv, InvalidArgument,
                            "Mesh: triangle references unknown vertex");
        }
        BIOT3F_THROW_IF(signed_area(t) <= 0.0, InvalidArgument,
                        "Mesh: triangle " + std::to_string(t) + " is not counterclockwise");
        for (int k = 0; k < 3; ++k) {
            const Index a = std::min(tri[k], tri[(k + 1) % 3]);
            const Index b = std::max(tri[k], tri[(k + 1) % 3]);
            auto [it, inserted] = lookup.try_emplace({a, b}, static_cast<Index>(edges_.size()));
            if (inserted) {
                edges_.push_back({a, b});
                edge_triangles_.push_back({t, -1});
            } else {
                auto& adj = edge_triangles_[it->second];
                BIOT3F_THROW_IF(adj[1] >= 0, InvalidArgument,
                                "Mesh: edge shared by more than two triangles");
                adj[1] = t;
            }
            triangle_edges_[t][k] = it->second;
        }
    }

    for (Index e = 0; e < num_edges(); ++e) {
        if (!is_boundary_edge(e)) continue;
        const bool is_neumann = neumann && neumann(edge_midpoint(e));
        boundary_edges_.push_back({e, is_neumann ? BoundaryTag::Neumann : BoundaryTag::Dirichlet});
    }
    BIOT3F_THROW_IF(count_boundary(BoundaryTag::Dirichlet) == 0, InvalidArgument,
                    "Mesh: the Dirichlet boundary must be nonempty");

    for (const auto& e : edges_) {
        h_ = std::max(h_, (vertices_[e[1]] - vertices_[e[0]]).norm());
    }
}

double Mesh::signed_area(Index triangle) const
{
    const auto& tri = triangles_[triangle];
    const Point2 a = vertices_[tri[1]] - vertices_[tri[0]];
    const Point2 b = vertices_[tri[2]] - vertices_[tri[0]];
    return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Point2 Mesh::edge_midpoint(Index edge) const
{
    return 0.5 * (vertices_[edges_[edge][0]] + vertices_[edges_[edge][1]]);
}

Point2 Mesh::outward_normal(Index edge) const
{
    const Index t = edge_triangles_[edge][0];
    const Point2 a = vertices_[edges_[edge][0]];
    const Point2 b = vertices_[edges_[edge][1]];
    Point2 n(b.y() - a.y(), a.x() - b.x());
    n.normalize();

    // Flip towards the side away from the opposite vertex.
    const auto& tri = triangles_[t];
    Index opposite = tri[0];
    for (Index v : tri) {
        if (v != edges_[edge][0] && v != edges_[edge][1]) opposite = v;
    }
    if (n.dot(vertices_[opposite] - a) > 0.0) n = -n;
    return n;
}

Index Mesh::count_boundary(BoundaryTag tag) const
{
    return static_cast<Index>(std::count_if(boundary_edges_.begin(), boundary_edges_.end(),
                                             [tag](const BoundaryEdge& b) { return b.tag == tag; }));
}

std::vector<Index> Mesh::dirichlet_vertices() const
{
    std::vector<char> mark(vertices_.size(), 0);
    for (const auto& b : boundary_edges_) {
        if (b.tag != BoundaryTag::Dirichlet) continue;
        mark[edges_[b.edge][0]] = 1;
        mark[edges_[b.edge][1]] = 1;
    }
    std::vector<Index> out;
    for (Index v = 0; v < num_vertices(); ++v) {
        if (mark[v]) out.push_back(v);
    }
    return out;
}

std::vector<Index> Mesh::dirichlet_edges() const
{
    std::vector<Index> out;
    for (const auto& b : boundary_edges_) {
        if (b.tag == BoundaryTag::Dirichlet) out.push_back(b.edge);
    }
    return out;
}

Mesh build_rectangle(double x0, double x1, double y0, double y1, int nx, int ny,
                     const NeumannPredicate& neumann)
{
    BIOT3F_THROW_IF(nx < 1 || ny < 1, InvalidArgument,
                    "build_rectangle: cell counts must be positive");
    BIOT3F_THROW_IF(!(x1 > x0) || !(y1 > y0), InvalidArgument,
                    "build_rectangle: empty domain");

    std::vector<Point2> vertices;
    vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            // Endpoints are assigned exactly so that boundary predicates see 0 and 1.
            const double x = (i == nx) ? x1 : x0 + (x1 - x0) * i / nx;
            const double y = (j == ny) ? y1 : y0 + (y1 - y0) * j / ny;
            vertices.emplace_back(x, y);
        }
    }

    auto id = [nx](int i, int j) { return static_cast<Index>(j * (nx + 1) + i); };
    std::vector<std::array<Index, 3>> triangles;
    triangles.reserve(static_cast<std::size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Index v00 = id(i, j), v10 = id(i + 1, j);
            const Index v01 = id(i, j + 1), v11 = id(i + 1, j + 1);
            triangles.push_back({v00, v10, v11});
            triangles.push_back({v00, v11, v01});
        }
    }
    return Mesh(std::move(vertices), std::move(triangles), neumann);
}

Mesh build_unit_square(int n, const NeumannPredicate& neumann)
{
    BIOT3F_THROW_IF(n < 1, InvalidArgument, "build_unit_square: n must be >= 1");
    return build_rectangle(0.0, 1.0, 0.0, 1.0, n, n, neumann);
}

std::vector<Mesh> refine_sequence(int n0, int levels, const NeumannPredicate& neumann)
{
    BIOT3F_THROW_IF(levels < 1, InvalidArgument, "refine_sequence: levels must be >= 1");
    std::vector<Mesh> meshes;
    meshes.reserve(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) {
        meshes.push_back(build_unit_square(n0 << k, neumann));
    }
    return meshes;
}

void write_vtk(std::ostream& os, const Mesh& mesh)
{
    os << "# vtk DataFile Version 3.0\n"
       << "biot3f mesh\n"
       << "ASCII\n"
       << "DATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << mesh.num_vertices() << " double\n";
    os.precision(17);
    for (const auto& v : mesh.vertices()) {
        os << v.x() << ' ' << v.y() << " 0\n";
    }
    os << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
    for (const auto& t : mesh.triangles()) {
        os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    os << "CELL_TYPES " << mesh.num_triangles() << '\n';
    for (Index t = 0; t < mesh.num_triangles(); ++t) os << "5\n";
}

} // namespace biot3f
