#include "biot3f/errors.hpp"

#include "biot3f/assembly.hpp"

#include <cmath>

namespace biot3f {

namespace {

Eigen::Matrix2d sym(const Eigen::Matrix2d& g)
{
    return 0.5 * (g + g.transpose());
}

// Values and gradients of a discrete field at one quadrature point, from cell coefficients.
struct Sampled {
    Eigen::Vector2d u;
    Eigen::Matrix2d grad_u;  // row = component
    double q;
    double p;
    Eigen::Vector2d grad_p;
};

} // namespace

ErrorReport compute_errors(const FieldState& s, const ManufacturedCase& mc, const Spaces& spaces)
{
    const double t = s.t;
    const Mesh& mesh = *spaces.mesh;
    const Eigen::VectorXd iu = interpolate(spaces.u, VectorField([&](const Point2& x) { return mc.u(x, t); }));
    const Eigen::VectorXd iq = interpolate(spaces.q, ScalarField([&](const Point2& x) { return mc.q(x, t); }));
    const Eigen::VectorXd ip = interpolate(spaces.p, ScalarField([&](const Point2& x) { return mc.p(x, t); }));

    const auto rule = triangle_rule(analytic_quadrature_degree);
    const ReferenceTable tu(spaces.u.element(), rule);
    const ReferenceTable tq(spaces.q.element(), rule);
    const ReferenceTable tp(spaces.p.element(), rule);

    auto sample = [&](const Eigen::VectorXd& cu, const Eigen::VectorXd& cq, const Eigen::VectorXd& cp,
                      const CellGeometry& geo, std::size_t k) {
        const auto kk = static_cast<Eigen::Index>(k);
        Sampled out{Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero(), 0.0, 0.0, Eigen::Vector2d::Zero()};
        const Eigen::Matrix<double, 2, Eigen::Dynamic> gu = geo.inverse_transpose * tu.ref_grads[k];
        for (int a = 0; a < spaces.u.local_node_count(); ++a) {
            for (int c = 0; c < 2; ++c) {
                const double coef = cu[2 * a + c];
                out.u[c] += coef * tu.values(a, kk);
                out.grad_u.row(c) += coef * gu.col(a).transpose();
            }
        }
        for (int a = 0; a < spaces.q.local_node_count(); ++a) out.q += cq[a] * tq.values(a, kk);
        const Eigen::Matrix<double, 2, Eigen::Dynamic> gp = geo.inverse_transpose * tp.ref_grads[k];
        for (int a = 0; a < spaces.p.local_node_count(); ++a) {
            out.p += cp[a] * tp.values(a, kk);
            out.grad_p += cp[a] * gp.col(a);
        }
        return out;
    };

    std::array<double, 5> sq_interp{}, sq_exact{}, sq_interp_err{};
    auto accumulate = [](std::array<double, 5>& acc, double w, const Sampled& a, const Sampled& b) {
        acc[0] += w * sym(a.grad_u - b.grad_u).squaredNorm();
        acc[1] += w * (a.u - b.u).squaredNorm();
        acc[2] += w * (a.q - b.q) * (a.q - b.q);
        acc[3] += w * (a.grad_p - b.grad_p).squaredNorm();
        acc[4] += w * (a.p - b.p) * (a.p - b.p);
    };

    for (Index cell = 0; cell < mesh.num_triangles(); ++cell) {
        const CellGeometry geo(mesh, cell);
        const Eigen::VectorXd hu = gather(spaces.u, s.u, cell), hq = gather(spaces.q, s.q, cell),
                              hp = gather(spaces.p, s.p, cell);
        const Eigen::VectorXd cu = gather(spaces.u, iu, cell), cq = gather(spaces.q, iq, cell),
                              cp = gather(spaces.p, ip, cell);
        for (std::size_t k = 0; k < rule.size(); ++k) {
            const double w = rule.weights[k] * std::abs(geo.det);
            const Point2 x = geo.map(rule.points[k]);
            const Sampled discrete = sample(hu, hq, hp, geo, k);
            const Sampled interp = sample(cu, cq, cp, geo, k);
            const Sampled exact{mc.u(x, t), mc.grad_u(x, t), mc.q(x, t), mc.p(x, t), mc.grad_p(x, t)};
            accumulate(sq_interp, w, interp, discrete);
            accumulate(sq_exact, w, exact, discrete);
            accumulate(sq_interp_err, w, exact, interp);
        }
    }

    auto to_norms = [](const std::array<double, 5>& a) {
        return NormSet{std::sqrt(a[0]), std::sqrt(a[1]), std::sqrt(a[2]), std::sqrt(a[3]), std::sqrt(a[4])};
    };
    return ErrorReport{to_norms(sq_interp), to_norms(sq_exact), to_norms(sq_interp_err)};
}

std::optional<double> observed_order(double e_coarse, double e_fine)
{
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return std::nullopt;
    return std::log2(e_coarse / e_fine);
}

} // namespace biot3f
