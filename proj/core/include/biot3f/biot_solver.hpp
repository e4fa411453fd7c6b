#pragma once

#include "biot3f/assembly.hpp"
#include "biot3f/fe_space.hpp"
#include "biot3f/linalg.hpp"
#include "biot3f/manufactured.hpp"
#include "biot3f/sparse_matrix.hpp"

#include <Eigen/Core>

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biot3f {

/// Displacement / total stress / pressure element triples.
enum class ElementPair {
    P2P0P1,  // discontinuous piecewise-constant stress
    P2P1P1,  // Taylor-Hood with continuous P1 stress
};

std::string_view to_string(ElementPair pair);
ElementPair parse_element_pair(std::string_view text);

struct Spaces {
    std::shared_ptr<const Mesh> mesh;
    FESpace u;
    FESpace q;
    FESpace p;
};

Spaces make_spaces(std::shared_ptr<const Mesh> mesh, ElementPair pair);

/// Uniform time grid t^n = n tau, n = 0..steps, with steps * tau = final_time.
struct TimeGrid {
    double tau = 0.0;
    int steps = 0;
    double final_time = 0.0;

    double time(int n) const { return n * tau; }
};

TimeGrid make_time_grid(double final_time, double tau);

/// Time-step selection relative to the mesh width 1/n.
struct TauRule {
    enum class Kind { HSquared, H, Fixed };
    Kind kind = Kind::HSquared;
    double value = 0.0;  // Fixed only

    double tau_for(int n) const;
    std::string to_string() const;
};

/// Accepts "h2", "h" or "fixed:<value>".
TauRule parse_tau_rule(std::string_view text);

/// Coefficient vectors of (u, q, p) at one time level.
struct FieldState {
    Eigen::VectorXd u;
    Eigen::VectorXd q;
    Eigen::VectorXd p;
    double t = 0.0;
};

FieldState zero_state(const Spaces& spaces, double t = 0.0);

/// Sparse blocks of the backward-Euler step and the monolithic [u; q; p] matrix.
struct BlockSystem {
    CsrMatrix A;    // 2 mu (eps(u), eps(v))
    CsrMatrix B;    // (div u, w_q)
    CsrMatrix Mqq;
    CsrMatrix Mqp;
    CsrMatrix Mpp;
    CsrMatrix K;    // kappa (grad p, grad w)
    CsrMatrix monolithic;
    std::vector<Index> constrained;  // monolithic indices of essential dofs
    Index offset_q = 0;
    Index offset_p = 0;
    Index size = 0;
};

BlockSystem assemble_block_system(const Spaces& spaces, const PhysicalParams& params, double tau);

/// Boundary data and loads for one step at time t.
struct StepInput {
    double t = 0.0;
    Loads loads;
    Eigen::VectorXd u_boundary;  // aligned with spaces.u.dirichlet_dofs()
    Eigen::VectorXd p_boundary;  // aligned with spaces.p.dirichlet_dofs()
};

/// Factorized fully-discrete operator; one instance serves every step.
class StepOperator {
public:
    StepOperator(const Spaces& spaces, const PhysicalParams& params, double tau);

    const BlockSystem& blocks() const { return blocks_; }
    const CsrMatrix& constrained_matrix() const { return elimination_.matrix(); }
    double tau() const { return tau_; }
    const PhysicalParams& params() const { return params_; }

    /// Monolithic right-hand side (before lifting) for given loads and previous state.
    Eigen::VectorXd right_hand_side(const FieldState& previous, const Loads& loads) const;

    FieldState step(const FieldState& previous, const StepInput& input) const;

private:
    PhysicalParams params_;
    double tau_;
    BlockSystem blocks_;
    DirichletElimination elimination_;
    Factorization factorization_;
};

/// Dirichlet values of the case at time t, aligned with the space's dirichlet_dofs().
Eigen::VectorXd boundary_values(const FESpace& space, const VectorField& u);
Eigen::VectorXd boundary_values(const FESpace& space, const ScalarField& p);

StepInput make_step_input(const ManufacturedCase& mc, const Spaces& spaces, double t);

using TensorField = std::function<Eigen::Matrix2d(const Point2&)>;

struct StokesProjection {
    Eigen::VectorXd u;
    Eigen::VectorXd q;
    double multiplier = 0.0;  // nonzero only for incompatible data without Neumann boundary
};

/// Discrete pair reproducing the elasticity and divergence moments of (u, q).
/// Without a Neumann boundary the stress mean is pinned to the exact mean.
StokesProjection stokes_projection(const VectorField& u, const TensorField& grad_u, const ScalarField& q,
                                   const Spaces& spaces, const PhysicalParams& params);

/// Ritz projection: (grad p_h, grad w) = (grad p, grad w), boundary dofs interpolated.
Eigen::VectorXd elliptic_projection(const ScalarField& p, const std::function<Eigen::Vector2d(const Point2&)>& grad_p,
                                    const FESpace& space_p);

/// Projected initial data of a manufactured case at t = 0.
FieldState initial_state(const ManufacturedCase& mc, const Spaces& spaces);

struct RunOptions {
    bool keep_trajectory = false;
    /// Called after every step with the step index and new state.
    std::function<void(int, const FieldState&)> observer;
};

struct RunResult {
    Spaces spaces;
    TimeGrid grid;
    FieldState final_state;
    std::vector<FieldState> trajectory;  // includes the initial state when kept
};

RunResult run(const ManufacturedCase& mc, ElementPair pair, int n, const TauRule& tau_rule,
              const RunOptions& options = {});
RunResult run(const ManufacturedCase& mc, ElementPair pair, int n, double tau, const RunOptions& options = {});

/// mu ||eps(u)||^2 + (1 / 2 lambda) ||q - p||^2.
double discrete_energy(const Spaces& spaces, const PhysicalParams& params, const FieldState& state);

/// Legacy VTK of a state: u at vertices, p point data, q as point (P1) or cell (P0) data.
void write_state_vtk(std::ostream& os, const Spaces& spaces, const FieldState& state);

} // namespace biot3f
