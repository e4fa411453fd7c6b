#include "biot3f/manufactured.hpp"

#include "biot3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace biot3f {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::Matrix2d mat(double a, double b, double c, double d)
{
    Eigen::Matrix2d m;
    m << a, b, c, d;
    return m;
}

// u = t^2 (sin(pi x) cos(pi y), cos(pi x) sin(pi y)), p = e^-t sin(pi x) sin(pi y).
ManufacturedCase make_polynomial_in_time_case(std::string name, PhysicalParams prm, NeumannPredicate neumann)
{
    ManufacturedCase mc;
    mc.name = std::move(name);
    mc.params = prm;
    mc.neumann = std::move(neumann);

    mc.u = [](const Point2& x, double t) {
        const double sx = std::sin(pi * x.x()), cx = std::cos(pi * x.x());
        const double sy = std::sin(pi * x.y()), cy = std::cos(pi * x.y());
        return Eigen::Vector2d(t * t * sx * cy, t * t * cx * sy);
    };
    mc.grad_u = [](const Point2& x, double t) {
        const double sx = std::sin(pi * x.x()), cx = std::cos(pi * x.x());
        const double sy = std::sin(pi * x.y()), cy = std::cos(pi * x.y());
        const double a = pi * t * t;
        return mat(a * cx * cy, -a * sx * sy, -a * sx * sy, a * cx * cy);
    };
    mc.p = [](const Point2& x, double t) {
        return std::exp(-t) * std::sin(pi * x.x()) * std::sin(pi * x.y());
    };
    mc.grad_p = [](const Point2& x, double t) {
        const double e = std::exp(-t);
        return Eigen::Vector2d(pi * e * std::cos(pi * x.x()) * std::sin(pi * x.y()),
                               pi * e * std::sin(pi * x.x()) * std::cos(pi * x.y()));
    };
    // f = -mu lap(u) - (mu + lambda) grad(div u) + grad p; lap(u) = grad(div u) = -2 pi^2 u.
    mc.f = [prm, u = mc.u, gp = mc.grad_p](const Point2& x, double t) -> Eigen::Vector2d {
        return 2.0 * pi * pi * (2.0 * prm.mu + prm.lambda) * u(x, t) + gp(x, t);
    };
    // g = div(u_t) - kappa lap(p).
    mc.g = [prm](const Point2& x, double t) {
        const double sx = std::sin(pi * x.x()), cx = std::cos(pi * x.x());
        const double sy = std::sin(pi * x.y()), cy = std::cos(pi * x.y());
        return 4.0 * pi * t * cx * cy + 2.0 * pi * pi * prm.kappa * std::exp(-t) * sx * sy;
    };
    return mc;
}

// u = e^-t [ sin(2wy)(-1 + cos(2wx)) + s sin(wx) sin(wy),
//            sin(2wx)(1 - cos(2wy))  + s sin(wx) sin(wy) ],  s = 1/(mu + lambda)
// p = e^-t sin(wx) sin(wy).
ManufacturedCase make_nearly_incompressible_case(std::string name, PhysicalParams prm, double w)
{
    ManufacturedCase mc;
    mc.name = std::move(name);
    mc.params = prm;
    const double s = 1.0 / (prm.mu + prm.lambda);

    mc.u = [w, s](const Point2& x, double t) {
        const double e = std::exp(-t);
        const double psi = std::sin(w * x.x()) * std::sin(w * x.y());
        return Eigen::Vector2d(
            e * (std::sin(2 * w * x.y()) * (-1.0 + std::cos(2 * w * x.x())) + s * psi),
            e * (std::sin(2 * w * x.x()) * (1.0 - std::cos(2 * w * x.y())) + s * psi));
    };
    mc.grad_u = [w, s](const Point2& x, double t) {
        const double e = std::exp(-t);
        const double s2x = std::sin(2 * w * x.x()), c2x = std::cos(2 * w * x.x());
        const double s2y = std::sin(2 * w * x.y()), c2y = std::cos(2 * w * x.y());
        const double sx = std::sin(w * x.x()), cx = std::cos(w * x.x());
        const double sy = std::sin(w * x.y()), cy = std::cos(w * x.y());
        return mat(e * (-2 * w * s2y * s2x + s * w * cx * sy),
                   e * (2 * w * c2y * (-1.0 + c2x) + s * w * sx * cy),
                   e * (2 * w * c2x * (1.0 - c2y) + s * w * cx * sy),
                   e * (2 * w * s2x * s2y + s * w * sx * cy));
    };
    mc.p = [w](const Point2& x, double t) {
        return std::exp(-t) * std::sin(w * x.x()) * std::sin(w * x.y());
    };
    mc.grad_p = [w](const Point2& x, double t) {
        const double e = std::exp(-t);
        return Eigen::Vector2d(w * e * std::cos(w * x.x()) * std::sin(w * x.y()),
                               w * e * std::sin(w * x.x()) * std::cos(w * x.y()));
    };
    // f = -mu lap(u) - (mu + lambda) grad(div u) + grad p with div u = e^-t s w sin(w(x+y)).
    mc.f = [prm, w, s, gp = mc.grad_p](const Point2& x, double t) -> Eigen::Vector2d {
        const double e = std::exp(-t);
        const double s2x = std::sin(2 * w * x.x()), c2x = std::cos(2 * w * x.x());
        const double s2y = std::sin(2 * w * x.y()), c2y = std::cos(2 * w * x.y());
        const double psi = std::sin(w * x.x()) * std::sin(w * x.y());
        const double w2 = w * w;
        const Eigen::Vector2d lap_curl(-4.0 * w2 * s2y * (2.0 * c2x - 1.0),
                                       -4.0 * w2 * s2x * (1.0 - 2.0 * c2y));
        const Eigen::Vector2d lap_u = e * (lap_curl - 2.0 * w2 * s * psi * Eigen::Vector2d::Ones());
        const Eigen::Vector2d grad_div = e * s * w2 * std::cos(w * (x.x() + x.y())) * Eigen::Vector2d::Ones();
        return -prm.mu * lap_u - (prm.mu + prm.lambda) * grad_div + gp(x, t);
    };
    mc.g = [prm, w, s](const Point2& x, double t) {
        const double e = std::exp(-t);
        const double psi = std::sin(w * x.x()) * std::sin(w * x.y());
        return -e * s * w * std::sin(w * (x.x() + x.y())) + 2.0 * prm.kappa * w * w * e * psi;
    };
    return mc;
}

void require(bool ok, const std::string& what)
{
    BIOT3F_THROW_IF(!ok, InvalidArgument, what);
}

} // namespace

Eigen::Matrix2d ManufacturedCase::stress(const Point2& x, double t) const
{
    const Eigen::Matrix2d gu = grad_u(x, t);
    const Eigen::Matrix2d eps = 0.5 * (gu + gu.transpose());
    return 2.0 * params.mu * eps + (params.lambda * gu.trace() - p(x, t)) * Eigen::Matrix2d::Identity();
}

std::vector<std::string> case_names()
{
    return {"ex1", "ex2", "ex3", "ex4"};
}

NeumannPredicate neumann_on_right_side()
{
    return [](const Point2& m) { return std::abs(m.x() - 1.0) < 1e-12; };
}

ManufacturedCase get_case(const std::string& name, std::optional<PhysicalParams> params_override)
{
    const PhysicalParams soft{1.0, 1e-2, 1.0};
    const PhysicalParams stiff{1.0, 1e4, 1.0};
    ManufacturedCase mc;
    if (name == "ex1") {
        mc = make_polynomial_in_time_case(name, params_override.value_or(soft), {});
    } else if (name == "ex2") {
        mc = make_polynomial_in_time_case(name, params_override.value_or(soft), neumann_on_right_side());
    } else if (name == "ex3") {
        mc = make_nearly_incompressible_case(name, params_override.value_or(stiff), pi);
    } else if (name == "ex4") {
        mc = make_nearly_incompressible_case(name, params_override.value_or(stiff), 1.0);
    } else {
        throw InvalidArgument("get_case: unknown case '" + name + "' (expected ex1, ex2, ex3 or ex4)");
    }
    mc.params.validate();
    return mc;
}

ManufacturedCase zero_case(PhysicalParams params)
{
    params.validate();
    ManufacturedCase mc;
    mc.name = "zero";
    mc.params = params;
    mc.u = [](const Point2&, double) { return Eigen::Vector2d::Zero().eval(); };
    mc.grad_u = [](const Point2&, double) { return Eigen::Matrix2d::Zero().eval(); };
    mc.p = [](const Point2&, double) { return 0.0; };
    mc.grad_p = [](const Point2&, double) { return Eigen::Vector2d::Zero().eval(); };
    mc.f = mc.u;
    mc.g = mc.p;
    return mc;
}

ManufacturedCase steady_polynomial_case(PhysicalParams params)
{
    params.validate();
    ManufacturedCase mc;
    mc.name = "steady";
    mc.params = params;
    // u = (x^2 + y^2, x^2 - 2xy): div u = 0, lap u = (4, 2).
    mc.u = [](const Point2& x, double) {
        return Eigen::Vector2d(x.x() * x.x() + x.y() * x.y(), x.x() * x.x() - 2.0 * x.x() * x.y());
    };
    mc.grad_u = [](const Point2& x, double) {
        return mat(2.0 * x.x(), 2.0 * x.y(), 2.0 * x.x() - 2.0 * x.y(), -2.0 * x.x());
    };
    mc.p = [](const Point2&, double) { return 0.5; };
    mc.grad_p = [](const Point2&, double) { return Eigen::Vector2d::Zero().eval(); };
    const double mu = params.mu;
    mc.f = [mu](const Point2&, double) { return Eigen::Vector2d(-4.0 * mu, -2.0 * mu); };
    mc.g = [](const Point2&, double) { return 0.0; };
    return mc;
}

NeumannData eval_neumann_data(const ManufacturedCase& mc, const Point2& x, double t, const Eigen::Vector2d& normal)
{
    require(mc.has_neumann(), "eval_neumann_data: case '" + mc.name + "' has no Neumann boundary");
    NeumannData out;
    out.beta = mc.stress(x, t) * normal;
    out.gamma = mc.params.kappa * mc.grad_p(x, t).dot(normal);
    return out;
}

double eval_strong_residual(const ManufacturedCase& mc, std::span<const ResidualSample> samples, double step)
{
    const double h = step;
    const Point2 ex(h, 0.0), ey(0.0, h);
    const double kappa = mc.params.kappa;

    double worst = 0.0;
    double scale_grad_u = 1.0, scale_grad_p = 1.0, scale_f = 1.0, scale_g = 1.0;
    for (const auto& s : samples) {
        scale_grad_u = std::max(scale_grad_u, mc.grad_u(s.x, s.t).cwiseAbs().maxCoeff());
        scale_grad_p = std::max(scale_grad_p, mc.grad_p(s.x, s.t).cwiseAbs().maxCoeff());
        scale_f = std::max(scale_f, mc.f(s.x, s.t).cwiseAbs().maxCoeff());
        scale_g = std::max(scale_g, std::abs(mc.g(s.x, s.t)));
    }

    for (const auto& s : samples) {
        const Point2& x = s.x;
        const double t = s.t;

        // Level 1: analytic gradients against differences of the primitive fields.
        Eigen::Matrix2d gu_fd;
        gu_fd.col(0) = (mc.u(x + ex, t) - mc.u(x - ex, t)) / (2 * h);
        gu_fd.col(1) = (mc.u(x + ey, t) - mc.u(x - ey, t)) / (2 * h);
        worst = std::max(worst, (gu_fd - mc.grad_u(x, t)).cwiseAbs().maxCoeff() / scale_grad_u);

        const Eigen::Vector2d gp_fd((mc.p(x + ex, t) - mc.p(x - ex, t)) / (2 * h),
                                    (mc.p(x + ey, t) - mc.p(x - ey, t)) / (2 * h));
        worst = std::max(worst, (gp_fd - mc.grad_p(x, t)).cwiseAbs().maxCoeff() / scale_grad_p);

        // Level 2: f = -div(stress), stress built from the analytic gradient.
        const Eigen::Matrix2d dsx = (mc.stress(x + ex, t) - mc.stress(x - ex, t)) / (2 * h);
        const Eigen::Matrix2d dsy = (mc.stress(x + ey, t) - mc.stress(x - ey, t)) / (2 * h);
        const Eigen::Vector2d f_fd = -(dsx.col(0) + dsy.col(1));
        worst = std::max(worst, (f_fd - mc.f(x, t)).cwiseAbs().maxCoeff() / scale_f);

        // g = d/dt div(u) - kappa lap(p).
        const double ddiv_dt = (mc.div_u(x, t + h) - mc.div_u(x, t - h)) / (2 * h);
        const double lap_p = (mc.grad_p(x + ex, t).x() - mc.grad_p(x - ex, t).x()) / (2 * h)
                             + (mc.grad_p(x + ey, t).y() - mc.grad_p(x - ey, t).y()) / (2 * h);
        worst = std::max(worst, std::abs(ddiv_dt - kappa * lap_p - mc.g(x, t)) / scale_g);

    }
    return worst;
}

std::vector<ResidualSample> random_interior_samples(int count, double final_time, unsigned seed)
{
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> space(0.01, 0.99);
    std::uniform_real_distribution<double> time(0.01 * final_time, final_time);
    std::vector<ResidualSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = space(gen);
        const double y = space(gen);
        out.push_back({Point2(x, y), time(gen)});
    }
    return out;
}

} // namespace biot3f
