#pragma once

#include "biot3f/biot_solver.hpp"
#include "biot3f/manufactured.hpp"

#include <Eigen/Dense>

#include <array>

namespace biot3f::testing {

/// Bivariate polynomial of total degree <= 5, coefficient (i, j) of x^i y^j.
struct Poly {
    Eigen::Matrix<double, 6, 6> c = Eigen::Matrix<double, 6, 6>::Zero();

    static Poly monomial(int i, int j, double coef = 1.0);
    double operator()(const Point2& x) const;
    Poly dx() const;
    Poly dy() const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(double s, const Poly& a);

/// Exact integral over a counterclockwise triangle via the divergence theorem
/// and a hard-coded 5-point Gauss rule on each edge.
double integrate(const Poly& p, const std::array<Point2, 3>& tri);

/// Lagrange basis of the complete polynomials of `degree` through `nodes`,
/// built from the monomial Vandermonde matrix.
std::vector<Poly> lagrange_basis(int degree, const std::vector<Point2>& nodes);

/// Monolithic [u; q; p] matrix assembled entry by entry from the monomial basis.
Eigen::MatrixXd dense_monolithic_oracle(const Spaces& spaces, const PhysicalParams& params, double tau);

/// Dense elimination of the given dofs: zero rows and columns, unit diagonal.
Eigen::MatrixXd eliminate_dense(Eigen::MatrixXd m, const std::vector<Index>& constrained);

/// Max |x^a y^b| integration error over all monomials up to each rule's degree.
double quadrature_exactness_error();

/// Largest |dof| over a homogeneous run (zero data, zero initial state).
double homogeneous_max_dof(ElementPair pair, int n, double tau);

/// Largest per-step change (infinity norm over all fields) of the steady polynomial case after step 1.
double stationarity_max_change(ElementPair pair, int n, double tau);

/// Largest relative energy increase between consecutive steps under zero data,
/// starting from a pseudo-random state with homogeneous boundary values.
double energy_max_increase(ElementPair pair, int n, double tau, int steps);

/// Max coefficient error of the Stokes and elliptic projections applied to
/// members of the discrete spaces.
double projection_reproduction_error(ElementPair pair, bool with_neumann);

/// Largest residual of the finite-difference strong-form oracle for a named case.
double strong_form_residual(const std::string& case_name);

/// Max entrywise difference between forward and reversed cell-order assembly of every block.
double assembly_order_difference(ElementPair pair, int n);

/// Interior residual of the assembled steady system for linear fields.
double patch_test_residual(ElementPair pair, int n);

/// Max |monolithic - dense oracle| on the 2-triangle mesh, before and after constraints.
double dense_oracle_difference(ElementPair pair);

} // namespace biot3f::testing
