#pragma once

#include "biot3f/mesh.hpp"
#include "biot3f/quadrature.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace biot3f {

/// Lagrange element of degree 0, 1 or 2 on the reference triangle.
///
/// Node order: vertices first, then the midpoints of the edges (0,1), (1,2),
/// (2,0). Degree 0 has a single node at the centroid.
class ReferenceElement {
public:
    explicit ReferenceElement(int degree);

    int degree() const { return degree_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Eigen::Vector3d>& nodes() const { return nodes_; }

    /// Basis values at a barycentric point.
    Eigen::VectorXd values(const Eigen::Vector3d& bary) const;
    /// Reference gradients (d/dxi, d/deta) at a barycentric point, one column per basis function.
    Eigen::Matrix<double, 2, Eigen::Dynamic> gradients(const Eigen::Vector3d& bary) const;

private:
    int degree_;
    std::vector<Eigen::Vector3d> nodes_;
};

/// Affine map from the reference triangle onto a mesh cell.
struct CellGeometry {
    Point2 origin;
    Eigen::Matrix2d jacobian;
    Eigen::Matrix2d inverse_transpose;
    double det = 0.0;

    CellGeometry(const Mesh& mesh, Index cell);

    double area() const { return 0.5 * det; }
    Point2 map(const Eigen::Vector3d& bary) const
    {
        return origin + jacobian * Eigen::Vector2d(bary[1], bary[2]);
    }
};

/// Basis values and reference gradients tabulated at the points of a rule.
struct ReferenceTable {
    QuadratureRule rule;
    Eigen::MatrixXd values;                                    // node x point
    std::vector<Eigen::Matrix<double, 2, Eigen::Dynamic>> ref_grads;  // per point, 2 x node

    ReferenceTable(const ReferenceElement& element, QuadratureRule rule);
};

enum class SpaceKind {
    P2Vector,
    P1Vector,         // diagnostic only (unstable pair negative control)
    P1Scalar,
    P1Unconstrained,  // continuous P1 without essential conditions (Taylor-Hood stress)
    P0Scalar,
};

std::string_view to_string(SpaceKind kind);

/// Global degree-of-freedom map for one field.
///
/// Scalar nodes are numbered vertices first, then edge midpoints (P2), or one
/// per triangle (P0). Vector dofs interleave components: dof = 2 * node + c.
class FESpace {
public:
    FESpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind);

    SpaceKind kind() const { return kind_; }
    const Mesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
    const ReferenceElement& element() const { return element_; }

    int components() const { return components_; }
    int degree() const { return element_.degree(); }
    Index dof_count() const { return dof_count_; }
    Index node_count() const { return static_cast<Index>(node_points_.size()); }
    int local_node_count() const { return element_.node_count(); }
    int local_dof_count() const { return components_ * element_.node_count(); }

    /// Global scalar node indices of a cell, in reference node order.
    std::span<const Index> cell_nodes(Index cell) const
    {
        return {cell_nodes_.data() + static_cast<std::size_t>(cell) * local_node_count(),
                static_cast<std::size_t>(local_node_count())};
    }
    /// Global dofs of a cell; local dof = components * local_node + c.
    std::span<const Index> cell_dofs(Index cell) const
    {
        return {cell_dofs_.data() + static_cast<std::size_t>(cell) * local_dof_count(),
                static_cast<std::size_t>(local_dof_count())};
    }
    const std::vector<Index>& cell_to_dofs() const { return cell_dofs_; }

    const std::vector<Point2>& node_points() const { return node_points_; }
    /// Sorted dofs carrying essential conditions (empty for P0 and the stress space).
    const std::vector<Index>& dirichlet_dofs() const { return dirichlet_dofs_; }

private:
    std::shared_ptr<const Mesh> mesh_;
    SpaceKind kind_;
    ReferenceElement element_;
    int components_ = 1;
    Index dof_count_ = 0;
    std::vector<Index> cell_nodes_;
    std::vector<Index> cell_dofs_;
    std::vector<Point2> node_points_;
    std::vector<Index> dirichlet_dofs_;
};

FESpace make_space(std::shared_ptr<const Mesh> mesh, SpaceKind kind);

/// Basis values (node x point) and physical gradients (per point, 2 x node) on one cell.
struct BasisEval {
    Eigen::MatrixXd values;
    std::vector<Eigen::Matrix<double, 2, Eigen::Dynamic>> gradients;
};

BasisEval eval_basis(const FESpace& space, Index cell, std::span<const Eigen::Vector3d> bary_points);

using ScalarField = std::function<double(const Point2&)>;
using VectorField = std::function<Eigen::Vector2d(const Point2&)>;

/// Nodal interpolation (P0: value at the centroid).
Eigen::VectorXd interpolate(const FESpace& space, const ScalarField& f);
Eigen::VectorXd interpolate(const FESpace& space, const VectorField& f);

/// Coefficients of `coeffs` restricted to the dofs of `cell`.
Eigen::VectorXd gather(const FESpace& space, const Eigen::VectorXd& coeffs, Index cell);

} // namespace biot3f
