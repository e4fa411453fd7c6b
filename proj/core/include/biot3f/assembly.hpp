#pragma once

#include "biot3f/fe_space.hpp"
#include "biot3f/manufactured.hpp"
#include "biot3f/params.hpp"
#include "biot3f/sparse_matrix.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace biot3f {

/// Quadrature degree for bilinear forms (exact for P2 x P2 on affine cells).
inline constexpr int bilinear_quadrature_degree = 6;
/// Quadrature degree for loads and error norms against analytic fields.
inline constexpr int analytic_quadrature_degree = 8;

enum class CellOrder { Forward, Reversed };

/// 2 mu (eps(phi_j), eps(phi_i)) on a vector space.
CsrMatrix assemble_elasticity(const FESpace& space_u, const PhysicalParams& params,
                              CellOrder order = CellOrder::Forward);

/// (div phi_j, w_i): rows follow the stress space, columns the displacement space.
CsrMatrix assemble_divergence(const FESpace& space_u, const FESpace& space_q,
                              CellOrder order = CellOrder::Forward);

/// (v_j, w_i) between two scalar spaces on the same mesh.
CsrMatrix assemble_mass(const FESpace& space_row, const FESpace& space_col,
                        CellOrder order = CellOrder::Forward);

/// kappa (grad w_j, grad w_i).
CsrMatrix assemble_pressure_stiffness(const FESpace& space_p, const PhysicalParams& params,
                                      CellOrder order = CellOrder::Forward);

/// (grad v_j : grad v_i) on a vector space, the H1-seminorm Gram matrix.
CsrMatrix assemble_vector_laplacian(const FESpace& space_u);

/// Right-hand sides of the displacement and pressure rows at time t.
struct Loads {
    Eigen::VectorXd force;   // (f, v) + <beta, v>_N
    Eigen::VectorXd source;  // (g, w) + <gamma, w>_N
};

Loads assemble_loads(double t, const ManufacturedCase& mc, const FESpace& space_u, const FESpace& space_p);

/// (f, v) for a vector field, plus the optional traction <beta, v> over Neumann edges.
Eigen::VectorXd assemble_vector_load(const FESpace& space, const VectorField& f,
                                     const std::function<Eigen::Vector2d(const Point2&, const Eigen::Vector2d&)>& traction = {});
/// (g, w) for a scalar field, plus the optional flux <gamma, w> over Neumann edges.
Eigen::VectorXd assemble_scalar_load(const FESpace& space, const ScalarField& g,
                                     const std::function<double(const Point2&, const Eigen::Vector2d&)>& flux = {});

/// Symmetric elimination of essential conditions.
///
/// Constrained rows and columns are zeroed with a unit diagonal; the removed
/// column entries are kept so that right-hand sides can be lifted repeatedly
/// for varying boundary values against one fixed matrix.
class DirichletElimination {
public:
    DirichletElimination(const CsrMatrix& matrix, std::vector<Index> constrained);

    const CsrMatrix& matrix() const { return constrained_matrix_; }
    const std::vector<Index>& constrained() const { return constrained_; }

    /// rhs - A[:, c] g on free rows and g on constrained rows. `values` pairs with constrained().
    Eigen::VectorXd lift(const Eigen::VectorXd& rhs, std::span<const double> values) const;

private:
    CsrMatrix constrained_matrix_;
    CsrMatrix coupling_;  // free rows x all columns, nonzero only in constrained columns
    std::vector<Index> constrained_;
};

struct ConstrainedSystem {
    CsrMatrix matrix;
    Eigen::VectorXd rhs;
};

ConstrainedSystem apply_dirichlet(const CsrMatrix& matrix, const Eigen::VectorXd& rhs,
                                  std::span<const Index> constrained, std::span<const double> values);

} // namespace biot3f
