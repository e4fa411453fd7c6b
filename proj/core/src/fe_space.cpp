#include "biot3f/fe_space.hpp"

#include "biot3f/error.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <string>

namespace biot3f {

ReferenceElement::ReferenceElement(int degree) : degree_(degree)
{
    switch (degree) {
    case 0:
        nodes_ = {Eigen::Vector3d::Constant(1.0 / 3.0)};
        break;
    case 1:
        nodes_ = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        break;
    case 2:
        nodes_ = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}};
        break;
    default:
        throw InvalidArgument("ReferenceElement: unsupported degree " + std::to_string(degree));
    }
}

Eigen::VectorXd ReferenceElement::values(const Eigen::Vector3d& l) const
{
    Eigen::VectorXd v(node_count());
    switch (degree_) {
    case 0:
        v[0] = 1.0;
        break;
    case 1:
        v = l;
        break;
    default:
        for (int i = 0; i < 3; ++i) {
            v[i] = l[i] * (2.0 * l[i] - 1.0);
            v[3 + i] = 4.0 * l[i] * l[(i + 1) % 3];
        }
        break;
    }
    return v;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> ReferenceElement::gradients(const Eigen::Vector3d& l) const
{
    // d(lambda_i)/d(xi, eta)
    static const Eigen::Matrix<double, 2, 3> dl = (Eigen::Matrix<double, 2, 3>() << -1, 1, 0, -1, 0, 1).finished();

    Eigen::Matrix<double, 2, Eigen::Dynamic> g(2, node_count());
    switch (degree_) {
    case 0:
        g.setZero();
        break;
    case 1:
        g = dl;
        break;
    default:
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            g.col(i) = (4.0 * l[i] - 1.0) * dl.col(i);
            g.col(3 + i) = 4.0 * (l[j] * dl.col(i) + l[i] * dl.col(j));
        }
        break;
    }
    return g;
}

CellGeometry::CellGeometry(const Mesh& mesh, Index cell)
{
    const auto& tri = mesh.triangles()[cell];
    const auto& v = mesh.vertices();
    origin = v[tri[0]];
    jacobian.col(0) = v[tri[1]] - origin;
    jacobian.col(1) = v[tri[2]] - origin;
    det = jacobian.determinant();
    BIOT3F_THROW_IF(!(std::abs(det) > 0.0), InvalidArgument,
                    "CellGeometry: degenerate cell " + std::to_string(cell));
    inverse_transpose = jacobian.inverse().transpose();
}

ReferenceTable::ReferenceTable(const ReferenceElement& element, QuadratureRule r)
    : rule(std::move(r))
{
    values.resize(element.node_count(), static_cast<Eigen::Index>(rule.size()));
    ref_grads.reserve(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
        values.col(static_cast<Eigen::Index>(q)) = element.values(rule.points[q]);
        ref_grads.push_back(element.gradients(rule.points[q]));
    }
}

std::string_view to_string(SpaceKind kind)
{
    switch (kind) {
    case SpaceKind::P2Vector: return "P2-vector";
    case SpaceKind::P1Vector: return "P1-vector";
    case SpaceKind::P1Scalar: return "P1";
    case SpaceKind::P1Unconstrained: return "P1-unconstrained";
    case SpaceKind::P0Scalar: return "P0";
    }
    return "unknown";
}

namespace {

int degree_of(SpaceKind kind)
{
    switch (kind) {
    case SpaceKind::P2Vector: return 2;
    case SpaceKind::P1Vector:
    case SpaceKind::P1Scalar:
    case SpaceKind::P1Unconstrained: return 1;
    case SpaceKind::P0Scalar: return 0;
    }
    throw InvalidArgument("make_space: unknown space kind");
}

} // namespace

FESpace::FESpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind)
    : mesh_(std::move(mesh)), kind_(kind), element_(degree_of(kind))
{
    BIOT3F_THROW_IF(!mesh_, InvalidArgument, "FESpace: null mesh");
    const Mesh& m = *mesh_;
    components_ = (kind == SpaceKind::P2Vector || kind == SpaceKind::P1Vector) ? 2 : 1;

    const int nloc = element_.node_count();
    cell_nodes_.resize(static_cast<std::size_t>(m.num_triangles()) * nloc);

    if (degree() == 0) {
        for (Index t = 0; t < m.num_triangles(); ++t) {
            cell_nodes_[t] = t;
            const auto& tri = m.triangles()[t];
            node_points_.push_back((m.vertices()[tri[0]] + m.vertices()[tri[1]] + m.vertices()[tri[2]]) / 3.0);
        }
    } else {
        node_points_ = m.vertices();
        if (degree() == 2) {
            for (Index e = 0; e < m.num_edges(); ++e) node_points_.push_back(m.edge_midpoint(e));
        }
        for (Index t = 0; t < m.num_triangles(); ++t) {
            Index* out = cell_nodes_.data() + static_cast<std::size_t>(t) * nloc;
            for (int k = 0; k < 3; ++k) out[k] = m.triangles()[t][k];
            if (degree() == 2) {
                for (int k = 0; k < 3; ++k) out[3 + k] = m.num_vertices() + m.triangle_edges()[t][k];
            }
        }
    }

    dof_count_ = components_ * static_cast<Index>(node_points_.size());
    cell_dofs_.resize(cell_nodes_.size() * components_);
    for (std::size_t i = 0; i < cell_nodes_.size(); ++i) {
        for (int c = 0; c < components_; ++c) {
            cell_dofs_[i * components_ + c] = components_ * cell_nodes_[i] + c;
        }
    }

    const bool constrained = kind == SpaceKind::P2Vector || kind == SpaceKind::P1Vector
                             || kind == SpaceKind::P1Scalar;
    if (constrained) {
        std::vector<Index> nodes = m.dirichlet_vertices();
        if (degree() == 2) {
            for (Index e : m.dirichlet_edges()) nodes.push_back(m.num_vertices() + e);
        }
        for (Index n : nodes) {
            for (int c = 0; c < components_; ++c) dirichlet_dofs_.push_back(components_ * n + c);
        }
        std::sort(dirichlet_dofs_.begin(), dirichlet_dofs_.end());
    }
}

FESpace make_space(std::shared_ptr<const Mesh> mesh, SpaceKind kind)
{
    return FESpace(std::move(mesh), kind);
}

BasisEval eval_basis(const FESpace& space, Index cell, std::span<const Eigen::Vector3d> bary_points)
{
    BIOT3F_THROW_IF(cell < 0 || cell >= space.mesh().num_triangles(), InvalidArgument,
                    "eval_basis: cell out of range");
    const CellGeometry geo(space.mesh(), cell);
    BasisEval out;
    out.values.resize(space.local_node_count(), static_cast<Eigen::Index>(bary_points.size()));
    for (std::size_t q = 0; q < bary_points.size(); ++q) {
        out.values.col(static_cast<Eigen::Index>(q)) = space.element().values(bary_points[q]);
        out.gradients.push_back(geo.inverse_transpose * space.element().gradients(bary_points[q]));
    }
    return out;
}

Eigen::VectorXd interpolate(const FESpace& space, const ScalarField& f)
{
    BIOT3F_THROW_IF(space.components() != 1, InvalidArgument,
                    "interpolate: scalar field on a vector space");
    Eigen::VectorXd out(space.dof_count());
    for (Index n = 0; n < space.node_count(); ++n) out[n] = f(space.node_points()[n]);
    return out;
}

Eigen::VectorXd interpolate(const FESpace& space, const VectorField& f)
{
    BIOT3F_THROW_IF(space.components() != 2, InvalidArgument,
                    "interpolate: vector field on a scalar space");
    Eigen::VectorXd out(space.dof_count());
    for (Index n = 0; n < space.node_count(); ++n) {
        const Eigen::Vector2d v = f(space.node_points()[n]);
        out[2 * n] = v[0];
        out[2 * n + 1] = v[1];
    }
    return out;
}

Eigen::VectorXd gather(const FESpace& space, const Eigen::VectorXd& coeffs, Index cell)
{
    const auto dofs = space.cell_dofs(cell);
    Eigen::VectorXd out(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t i = 0; i < dofs.size(); ++i) out[static_cast<Eigen::Index>(i)] = coeffs[dofs[i]];
    return out;
}

} // namespace biot3f
