#pragma once

#include <Eigen/Core>

#include <vector>

namespace biot3f {

/// Quadrature on the reference triangle {(0,0),(1,0),(0,1)} or the unit
/// segment. Points are barycentric; for segments the third coordinate is 0.
/// Triangle weights sum to 1/2, segment weights to 1.
struct QuadratureRule {
    std::vector<Eigen::Vector3d> points;
    std::vector<double> weights;
    int exact_degree = 0;

    std::size_t size() const { return weights.size(); }
};

/// Largest polynomial degree any rule below is built for.
inline constexpr int max_quadrature_degree = 10;

/// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

/// Collapsed (Duffy) tensor Gauss rule, exact for total degree <= `exact_degree`.
QuadratureRule triangle_rule(int exact_degree);

/// Gauss-Legendre rule on the unit segment, exact for degree <= `exact_degree`.
QuadratureRule edge_rule(int exact_degree);

} // namespace biot3f
