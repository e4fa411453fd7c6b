#pragma once

#include "biot3f/mesh.hpp"
#include "biot3f/params.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace biot3f {

using SpaceTimeScalar = std::function<double(const Point2&, double)>;
using SpaceTimeVector = std::function<Eigen::Vector2d(const Point2&, double)>;
/// Row i holds the gradient of component i.
using SpaceTimeTensor = std::function<Eigen::Matrix2d(const Point2&, double)>;

/// Closed-form exact solution of the three-field problem with matching data.
///
/// `f` and `g` are the body force and fluid source that make (u, p) an exact
/// solution; `grad_u` and `grad_p` supply the analytic derivatives used for
/// tractions, fluxes, projections and exact-field error norms.
struct ManufacturedCase {
    std::string name;
    PhysicalParams params;
    double final_time = 1.0;
    NeumannPredicate neumann;  // empty: the whole boundary is Dirichlet

    SpaceTimeVector u;
    SpaceTimeTensor grad_u;
    SpaceTimeScalar p;
    SpaceTimeVector grad_p;
    SpaceTimeVector f;
    SpaceTimeScalar g;

    double div_u(const Point2& x, double t) const { return grad_u(x, t).trace(); }
    /// Total stress q = -lambda div u + p.
    double q(const Point2& x, double t) const { return -params.lambda * div_u(x, t) + p(x, t); }
    /// Effective stress 2 mu eps(u) + lambda div(u) I - p I.
    Eigen::Matrix2d stress(const Point2& x, double t) const;

    bool has_neumann() const { return static_cast<bool>(neumann); }
};

/// Names accepted by get_case.
std::vector<std::string> case_names();

/// ex1..ex4 with their default parameters; `params_override` replaces them.
ManufacturedCase get_case(const std::string& name, std::optional<PhysicalParams> params_override = {});

/// u = 0, p = 0, f = 0, g = 0 on a fully Dirichlet square.
ManufacturedCase zero_case(PhysicalParams params = {});

/// Time-independent polynomial triple: quadratic u with divergence-free part,
/// constant pressure, so (u, q, p) lies in every implemented discrete space.
ManufacturedCase steady_polynomial_case(PhysicalParams params = {});

/// Neumann traction and flux on a boundary point with outward normal n.
struct NeumannData {
    Eigen::Vector2d beta;
    double gamma = 0.0;
};

NeumannData eval_neumann_data(const ManufacturedCase& mc, const Point2& x, double t, const Eigen::Vector2d& normal);

struct ResidualSample {
    Point2 x;
    double t;
};

/// Largest relative mismatch between the closed forms (grad_u, grad_p, f, g)
/// and centered finite differences of the primitive fields at the samples.
/// Derivatives are nested first differences with the given step; each level
/// differentiates a closed form, never a finite difference.
double eval_strong_residual(const ManufacturedCase& mc, std::span<const ResidualSample> samples,
                            double step = 1e-5);

/// `count` deterministic pseudo-random interior samples in (0,1)^2 x (0, T].
std::vector<ResidualSample> random_interior_samples(int count, double final_time, unsigned seed = 12345);

/// Neumann predicates.
NeumannPredicate neumann_on_right_side();

} // namespace biot3f
