#include "biot3f/assembly.hpp"

#include "biot3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace biot3f {

namespace {

void require_same_mesh(const FESpace& a, const FESpace& b, const char* who)
{
    BIOT3F_THROW_IF(a.mesh_ptr() != b.mesh_ptr(), InvalidArgument,
                    std::string(who) + ": spaces are built on different meshes");
}

std::vector<Index> cell_sequence(Index n, CellOrder order)
{
    std::vector<Index> cells(static_cast<std::size_t>(n));
    for (Index t = 0; t < n; ++t) cells[t] = (order == CellOrder::Forward) ? t : n - 1 - t;
    return cells;
}

void scatter(std::vector<Triplet>& out, std::span<const Index> rows, std::span<const Index> cols,
             const Eigen::MatrixXd& local)
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out.push_back({rows[i], cols[j], local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
        }
    }
}

// Barycentric coordinates of the point at parameter s along local edge k
// (from local vertex k towards local vertex k+1).
Eigen::Vector3d edge_point(int k, double s)
{
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    b[k] = 1.0 - s;
    b[(k + 1) % 3] = s;
    return b;
}

int local_edge_index(const Mesh& mesh, Index cell, Index edge)
{
    for (int k = 0; k < 3; ++k) {
        if (mesh.triangle_edges()[cell][k] == edge) return k;
    }
    throw Error("local_edge_index: edge not in cell");
}

} // namespace

CsrMatrix assemble_elasticity(const FESpace& space_u, const PhysicalParams& params, CellOrder order)
{
    BIOT3F_THROW_IF(space_u.components() != 2, InvalidArgument, "assemble_elasticity: vector space required");
    params.validate();
    const Mesh& mesh = space_u.mesh();
    const ReferenceTable table(space_u.element(), triangle_rule(bilinear_quadrature_degree));
    const int nn = space_u.local_node_count();
    const int nd = space_u.local_dof_count();

    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(mesh.num_triangles()) * nd * nd);
    Eigen::MatrixXd local(nd, nd);
    for (Index cell : cell_sequence(mesh.num_triangles(), order)) {
        const CellGeometry geo(mesh, cell);
        local.setZero();
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const Eigen::Matrix<double, 2, Eigen::Dynamic> g = geo.inverse_transpose * table.ref_grads[q];
            const double wq = params.mu * table.rule.weights[q] * std::abs(geo.det);
            for (int a = 0; a < nn; ++a) {
                for (int b = 0; b < nn; ++b) {
                    const double gg = g.col(a).dot(g.col(b));
                    for (int c = 0; c < 2; ++c) {
                        for (int d = 0; d < 2; ++d) {
                            local(2 * a + c, 2 * b + d) += wq * ((c == d ? gg : 0.0) + g(d, a) * g(c, b));
                        }
                    }
                }
            }
        }
        const auto dofs = space_u.cell_dofs(cell);
        scatter(trip, dofs, dofs, local);
    }
    return CsrMatrix::from_triplets(space_u.dof_count(), space_u.dof_count(), std::move(trip));
}

CsrMatrix assemble_divergence(const FESpace& space_u, const FESpace& space_q, CellOrder order)
{
    require_same_mesh(space_u, space_q, "assemble_divergence");
    BIOT3F_THROW_IF(space_u.components() != 2 || space_q.components() != 1, InvalidArgument,
                    "assemble_divergence: expects a vector and a scalar space");
    const Mesh& mesh = space_u.mesh();
    const auto rule = triangle_rule(bilinear_quadrature_degree);
    const ReferenceTable tu(space_u.element(), rule);
    const ReferenceTable tq(space_q.element(), rule);
    const int nu = space_u.local_node_count();
    const int nq = space_q.local_node_count();

    std::vector<Triplet> trip;
    Eigen::MatrixXd local(nq, 2 * nu);
    for (Index cell : cell_sequence(mesh.num_triangles(), order)) {
        const CellGeometry geo(mesh, cell);
        local.setZero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Eigen::Matrix<double, 2, Eigen::Dynamic> g = geo.inverse_transpose * tu.ref_grads[q];
            const double wq = rule.weights[q] * std::abs(geo.det);
            for (int i = 0; i < nq; ++i) {
                const double wi = wq * tq.values(i, static_cast<Eigen::Index>(q));
                for (int b = 0; b < nu; ++b) {
                    local(i, 2 * b) += wi * g(0, b);
                    local(i, 2 * b + 1) += wi * g(1, b);
                }
            }
        }
        scatter(trip, space_q.cell_dofs(cell), space_u.cell_dofs(cell), local);
    }
    return CsrMatrix::from_triplets(space_q.dof_count(), space_u.dof_count(), std::move(trip));
}

CsrMatrix assemble_mass(const FESpace& space_row, const FESpace& space_col, CellOrder order)
{
    require_same_mesh(space_row, space_col, "assemble_mass");
    BIOT3F_THROW_IF(space_row.components() != 1 || space_col.components() != 1, InvalidArgument,
                    "assemble_mass: scalar spaces required");
    const Mesh& mesh = space_row.mesh();
    const auto rule = triangle_rule(bilinear_quadrature_degree);
    const ReferenceTable tr(space_row.element(), rule);
    const ReferenceTable tc(space_col.element(), rule);
    const int nr = space_row.local_node_count();
    const int nc = space_col.local_node_count();

    std::vector<Triplet> trip;
    Eigen::MatrixXd local(nr, nc);
    for (Index cell : cell_sequence(mesh.num_triangles(), order)) {
        const CellGeometry geo(mesh, cell);
        local.setZero();
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto qi = static_cast<Eigen::Index>(q);
            local.noalias() += (rule.weights[q] * std::abs(geo.det)) * tr.values.col(qi) * tc.values.col(qi).transpose();
        }
        scatter(trip, space_row.cell_dofs(cell), space_col.cell_dofs(cell), local);
    }
    return CsrMatrix::from_triplets(space_row.dof_count(), space_col.dof_count(), std::move(trip));
}

CsrMatrix assemble_pressure_stiffness(const FESpace& space_p, const PhysicalParams& params, CellOrder order)
{
    BIOT3F_THROW_IF(space_p.components() != 1, InvalidArgument,
                    "assemble_pressure_stiffness: scalar space required");
    params.validate();
    const Mesh& mesh = space_p.mesh();
    const ReferenceTable table(space_p.element(), triangle_rule(bilinear_quadrature_degree));
    const int n = space_p.local_node_count();

    std::vector<Triplet> trip;
    Eigen::MatrixXd local(n, n);
    for (Index cell : cell_sequence(mesh.num_triangles(), order)) {
        const CellGeometry geo(mesh, cell);
        local.setZero();
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const Eigen::Matrix<double, 2, Eigen::Dynamic> g = geo.inverse_transpose * table.ref_grads[q];
            local.noalias() += (params.kappa * table.rule.weights[q] * std::abs(geo.det)) * g.transpose() * g;
        }
        const auto dofs = space_p.cell_dofs(cell);
        scatter(trip, dofs, dofs, local);
    }
    return CsrMatrix::from_triplets(space_p.dof_count(), space_p.dof_count(), std::move(trip));
}

CsrMatrix assemble_vector_laplacian(const FESpace& space_u)
{
    BIOT3F_THROW_IF(space_u.components() != 2, InvalidArgument,
                    "assemble_vector_laplacian: vector space required");
    const Mesh& mesh = space_u.mesh();
    const ReferenceTable table(space_u.element(), triangle_rule(bilinear_quadrature_degree));
    const int nn = space_u.local_node_count();
    const int nd = space_u.local_dof_count();

    std::vector<Triplet> trip;
    Eigen::MatrixXd local(nd, nd);
    for (Index cell = 0; cell < mesh.num_triangles(); ++cell) {
        const CellGeometry geo(mesh, cell);
        local.setZero();
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const Eigen::Matrix<double, 2, Eigen::Dynamic> g = geo.inverse_transpose * table.ref_grads[q];
            const Eigen::MatrixXd k = (table.rule.weights[q] * std::abs(geo.det)) * g.transpose() * g;
            for (int a = 0; a < nn; ++a) {
                for (int b = 0; b < nn; ++b) {
                    local(2 * a, 2 * b) += k(a, b);
                    local(2 * a + 1, 2 * b + 1) += k(a, b);
                }
            }
        }
        const auto dofs = space_u.cell_dofs(cell);
        scatter(trip, dofs, dofs, local);
    }
    return CsrMatrix::from_triplets(space_u.dof_count(), space_u.dof_count(), std::move(trip));
}

Eigen::VectorXd assemble_vector_load(const FESpace& space, const VectorField& f,
                                     const std::function<Eigen::Vector2d(const Point2&, const Eigen::Vector2d&)>& traction)
{
    BIOT3F_THROW_IF(space.components() != 2, InvalidArgument, "assemble_vector_load: vector space required");
    const Mesh& mesh = space.mesh();
    const ReferenceTable table(space.element(), triangle_rule(analytic_quadrature_degree));
    const int nn = space.local_node_count();

    Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
    for (Index cell = 0; cell < mesh.num_triangles(); ++cell) {
        const CellGeometry geo(mesh, cell);
        const auto dofs = space.cell_dofs(cell);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const Eigen::Vector2d fq = f(geo.map(table.rule.points[q])) * (table.rule.weights[q] * std::abs(geo.det));
            for (int a = 0; a < nn; ++a) {
                const double phi = table.values(a, static_cast<Eigen::Index>(q));
                out[dofs[2 * a]] += phi * fq[0];
                out[dofs[2 * a + 1]] += phi * fq[1];
            }
        }
    }

    if (traction) {
        const auto rule = edge_rule(analytic_quadrature_degree);
        for (const auto& be : mesh.boundary_edges()) {
            if (be.tag != BoundaryTag::Neumann) continue;
            const Index cell = mesh.edge_triangles()[be.edge][0];
            const int k = local_edge_index(mesh, cell, be.edge);
            const CellGeometry geo(mesh, cell);
            const Eigen::Vector2d normal = mesh.outward_normal(be.edge);
            const auto& e = mesh.edges()[be.edge];
            const double length = (mesh.vertices()[e[1]] - mesh.vertices()[e[0]]).norm();
            const auto dofs = space.cell_dofs(cell);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Eigen::Vector3d b = edge_point(k, rule.points[q][1]);
                const Eigen::Vector2d tq = traction(geo.map(b), normal) * (rule.weights[q] * length);
                const Eigen::VectorXd phi = space.element().values(b);
                for (int a = 0; a < nn; ++a) {
                    out[dofs[2 * a]] += phi[a] * tq[0];
                    out[dofs[2 * a + 1]] += phi[a] * tq[1];
                }
            }
        }
    }
    return out;
}

Eigen::VectorXd assemble_scalar_load(const FESpace& space, const ScalarField& g,
                                     const std::function<double(const Point2&, const Eigen::Vector2d&)>& flux)
{
    BIOT3F_THROW_IF(space.components() != 1, InvalidArgument, "assemble_scalar_load: scalar space required");
    const Mesh& mesh = space.mesh();
    const ReferenceTable table(space.element(), triangle_rule(analytic_quadrature_degree));
    const int nn = space.local_node_count();

    Eigen::VectorXd out = Eigen::VectorXd::Zero(space.dof_count());
    for (Index cell = 0; cell < mesh.num_triangles(); ++cell) {
        const CellGeometry geo(mesh, cell);
        const auto dofs = space.cell_dofs(cell);
        for (std::size_t q = 0; q < table.rule.size(); ++q) {
            const double gq = g(geo.map(table.rule.points[q])) * (table.rule.weights[q] * std::abs(geo.det));
            for (int a = 0; a < nn; ++a) out[dofs[a]] += table.values(a, static_cast<Eigen::Index>(q)) * gq;
        }
    }

    if (flux) {
        const auto rule = edge_rule(analytic_quadrature_degree);
        for (const auto& be : mesh.boundary_edges()) {
            if (be.tag != BoundaryTag::Neumann) continue;
            const Index cell = mesh.edge_triangles()[be.edge][0];
            const int k = local_edge_index(mesh, cell, be.edge);
            const CellGeometry geo(mesh, cell);
            const Eigen::Vector2d normal = mesh.outward_normal(be.edge);
            const auto& e = mesh.edges()[be.edge];
            const double length = (mesh.vertices()[e[1]] - mesh.vertices()[e[0]]).norm();
            const auto dofs = space.cell_dofs(cell);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Eigen::Vector3d b = edge_point(k, rule.points[q][1]);
                const double fq = flux(geo.map(b), normal) * (rule.weights[q] * length);
                const Eigen::VectorXd phi = space.element().values(b);
                for (int a = 0; a < nn; ++a) out[dofs[a]] += phi[a] * fq;
            }
        }
    }
    return out;
}

Loads assemble_loads(double t, const ManufacturedCase& mc, const FESpace& space_u, const FESpace& space_p)
{
    require_same_mesh(space_u, space_p, "assemble_loads");
    Loads loads;
    const auto f = [&](const Point2& x) { return mc.f(x, t); };
    const auto g = [&](const Point2& x) { return mc.g(x, t); };
    if (mc.has_neumann()) {
        const auto beta = [&](const Point2& x, const Eigen::Vector2d& n) { return eval_neumann_data(mc, x, t, n).beta; };
        const auto gamma = [&](const Point2& x, const Eigen::Vector2d& n) { return eval_neumann_data(mc, x, t, n).gamma; };
        loads.force = assemble_vector_load(space_u, f, beta);
        loads.source = assemble_scalar_load(space_p, g, gamma);
    } else {
        loads.force = assemble_vector_load(space_u, f);
        loads.source = assemble_scalar_load(space_p, g);
    }
    return loads;
}

DirichletElimination::DirichletElimination(const CsrMatrix& matrix, std::vector<Index> constrained)
    : constrained_(std::move(constrained))
{
    BIOT3F_THROW_IF(matrix.rows() != matrix.cols(), InvalidArgument, "DirichletElimination: square matrix required");
    std::sort(constrained_.begin(), constrained_.end());
    constrained_.erase(std::unique(constrained_.begin(), constrained_.end()), constrained_.end());

    std::vector<char> is_constrained(static_cast<std::size_t>(matrix.rows()), 0);
    for (Index c : constrained_) {
        BIOT3F_THROW_IF(c < 0 || c >= matrix.rows(), InvalidArgument, "DirichletElimination: dof out of range");
        is_constrained[c] = 1;
    }

    std::vector<Triplet> kept, coupling;
    const auto& rp = matrix.row_ptr();
    const auto& ci = matrix.col_idx();
    const auto& v = matrix.values();
    for (Index i = 0; i < matrix.rows(); ++i) {
        if (is_constrained[i]) {
            kept.push_back({i, i, 1.0});
            continue;
        }
        for (Index k = rp[i]; k < rp[i + 1]; ++k) {
            if (is_constrained[ci[k]]) {
                coupling.push_back({i, ci[k], v[k]});
            } else {
                kept.push_back({i, ci[k], v[k]});
            }
        }
    }
    constrained_matrix_ = CsrMatrix::from_triplets(matrix.rows(), matrix.cols(), std::move(kept));
    coupling_ = CsrMatrix::from_triplets(matrix.rows(), matrix.cols(), std::move(coupling));
}

Eigen::VectorXd DirichletElimination::lift(const Eigen::VectorXd& rhs, std::span<const double> values) const
{
    BIOT3F_THROW_IF(rhs.size() != constrained_matrix_.rows(), InvalidArgument,
                    "DirichletElimination::lift: right-hand side size mismatch");
    BIOT3F_THROW_IF(values.size() != constrained_.size(), InvalidArgument,
                    "DirichletElimination::lift: missing boundary value (" + std::to_string(values.size())
                        + " values for " + std::to_string(constrained_.size()) + " constrained dofs)");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(rhs.size());
    for (std::size_t k = 0; k < constrained_.size(); ++k) {
        BIOT3F_THROW_IF(!std::isfinite(values[k]), InvalidArgument,
                        "DirichletElimination::lift: missing boundary value for dof " + std::to_string(constrained_[k]));
        g[constrained_[k]] = values[k];
    }
    Eigen::VectorXd out = rhs - coupling_.multiply(g);
    for (Index c : constrained_) out[c] = g[c];
    return out;
}

ConstrainedSystem apply_dirichlet(const CsrMatrix& matrix, const Eigen::VectorXd& rhs,
                                  std::span<const Index> constrained, std::span<const double> values)
{
    BIOT3F_THROW_IF(values.size() != constrained.size(), InvalidArgument,
                    "apply_dirichlet: missing boundary value for a constrained dof");
    // Pair values with the sorted order used by the elimination.
    std::vector<std::pair<Index, double>> pairs;
    for (std::size_t k = 0; k < constrained.size(); ++k) pairs.emplace_back(constrained[k], values[k]);
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    pairs.erase(std::unique(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                pairs.end());

    std::vector<Index> dofs;
    std::vector<double> vals;
    for (const auto& [d, val] : pairs) {
        dofs.push_back(d);
        vals.push_back(val);
    }
    DirichletElimination elim(matrix, dofs);
    return {elim.matrix(), elim.lift(rhs, vals)};
}

} // namespace biot3f
