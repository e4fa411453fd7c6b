#include "biot3f/quadrature.hpp"

#include "biot3f/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace biot3f {

namespace {

int points_for_degree(int exact_degree)
{
    BIOT3F_THROW_IF(exact_degree < 0 || exact_degree > max_quadrature_degree, InvalidArgument,
                    "quadrature: unsupported degree " + std::to_string(exact_degree));
    return exact_degree / 2 + 1;
}

} // namespace

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights)
{
    BIOT3F_THROW_IF(count < 1, InvalidArgument, "gauss_legendre: count must be >= 1");
    nodes.assign(static_cast<std::size_t>(count), 0.0);
    weights.assign(static_cast<std::size_t>(count), 0.0);

    // Newton iteration on P_count over [-1,1], then map to [0,1].
    for (int i = 0; i < count; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= count; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= count; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = count * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(count - 1 - i)] = 0.5 * (x + 1.0);
        weights[static_cast<std::size_t>(count - 1 - i)] = 0.5 * w;
    }
}

QuadratureRule triangle_rule(int exact_degree)
{
    // The collapsed Jacobian raises the degree in the first direction by one.
    points_for_degree(exact_degree);
    const int m = (exact_degree + 1) / 2 + 1;
    std::vector<double> s, ws;
    gauss_legendre(m, s, ws);

    QuadratureRule rule;
    rule.exact_degree = exact_degree;
    // (a, b) in [0,1]^2 -> xi = a, eta = b (1 - a); Jacobian (1 - a).
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double xi = s[i];
            const double eta = s[j] * (1.0 - s[i]);
            rule.points.emplace_back(1.0 - xi - eta, xi, eta);
            rule.weights.push_back(ws[i] * ws[j] * (1.0 - s[i]));
        }
    }
    return rule;
}

QuadratureRule edge_rule(int exact_degree)
{
    const int m = points_for_degree(exact_degree);
    std::vector<double> s, ws;
    gauss_legendre(m, s, ws);

    QuadratureRule rule;
    rule.exact_degree = exact_degree;
    for (int i = 0; i < m; ++i) {
        rule.points.emplace_back(1.0 - s[i], s[i], 0.0);
        rule.weights.push_back(ws[i]);
    }
    return rule;
}

} // namespace biot3f
