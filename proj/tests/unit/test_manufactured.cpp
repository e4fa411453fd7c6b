#include "biot3f/error.hpp"
#include "biot3f/manufactured.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace biot3f;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Cases, CatalogAndDefaults)
{
    EXPECT_EQ(case_names(), (std::vector<std::string>{"ex1", "ex2", "ex3", "ex4"}));
    for (const auto& name : {"ex1", "ex2"}) {
        const auto mc = get_case(name);
        EXPECT_EQ(mc.params.mu, 1.0);
        EXPECT_EQ(mc.params.lambda, 1e-2);
        EXPECT_EQ(mc.params.kappa, 1.0);
        EXPECT_EQ(mc.final_time, 1.0);
    }
    for (const auto& name : {"ex3", "ex4"}) {
        const auto mc = get_case(name);
        EXPECT_EQ(mc.params.lambda, 1e4);
        EXPECT_EQ(mc.params.mu, 1.0);
        EXPECT_EQ(mc.params.kappa, 1.0);
        EXPECT_EQ(mc.final_time, 1.0);
    }
    EXPECT_THROW(get_case("ex5"), InvalidArgument);
    const auto custom = get_case("ex1", PhysicalParams{2.0, 3.0, 4.0});
    EXPECT_EQ(custom.params.lambda, 3.0);
    EXPECT_THROW(get_case("ex1", PhysicalParams{1.0, 0.0, 1.0}), InvalidArgument);
}

TEST(Cases, BoundaryLayout)
{
    EXPECT_FALSE(get_case("ex1").has_neumann());
    EXPECT_FALSE(get_case("ex3").has_neumann());
    EXPECT_FALSE(get_case("ex4").has_neumann());
    const auto ex2 = get_case("ex2");
    ASSERT_TRUE(ex2.has_neumann());
    EXPECT_TRUE(ex2.neumann(Point2(1.0, 0.5)));
    EXPECT_FALSE(ex2.neumann(Point2(0.5, 1.0)));
    EXPECT_FALSE(ex2.neumann(Point2(0.0, 0.5)));
}

TEST(Cases, Example1Divergence)
{
    const auto mc = get_case("ex1");
    for (const Point2& x : {Point2(0.2, 0.7), Point2(0.9, 0.1)}) {
        for (double t : {0.0, 0.4, 1.0}) {
            EXPECT_NEAR(mc.div_u(x, t), 2.0 * pi * t * t * std::cos(pi * x.x()) * std::cos(pi * x.y()), 1e-13);
        }
        EXPECT_EQ(mc.u(x, 0.0).norm(), 0.0);
    }
}

TEST(Cases, Example3DivergenceAndIncompressibility)
{
    const auto mc = get_case("ex3");
    const double s = 1.0 / (mc.params.mu + mc.params.lambda);
    for (const Point2& x : {Point2(0.3, 0.6), Point2(0.5, 0.5), Point2(0.05, 0.95)}) {
        EXPECT_NEAR(mc.div_u(x, 0.7), pi * std::exp(-0.7) * std::sin(pi * (x.x() + x.y())) * s, 1e-15);
        EXPECT_LE(std::abs(mc.div_u(x, 0.0)), 3.2e-4);
    }
}

TEST(Cases, Example4IsExample3AtUnitFrequency)
{
    // Same formulas with pi replaced by 1: ex4(x) and ex3(x / pi) agree in value up to the scaled point.
    const auto e3 = get_case("ex3");
    const auto e4 = get_case("ex4");
    for (const Point2& x : {Point2(0.3, 0.6), Point2(0.8, 0.25)}) {
        const Point2 y = x / pi;
        EXPECT_LE((e4.u(x, 0.5) - e3.u(y, 0.5)).norm(), 1e-14);
        EXPECT_NEAR(e4.p(x, 0.5), e3.p(y, 0.5), 1e-15);
        EXPECT_LE((e4.grad_u(x, 0.5) - e3.grad_u(y, 0.5) / pi).norm(), 1e-14);
    }
}

TEST(Cases, TotalStressIdentity)
{
    for (const auto& name : case_names()) {
        const auto mc = get_case(name);
        const Point2 x(0.37, 0.81);
        EXPECT_NEAR(mc.q(x, 0.0), -mc.params.lambda * mc.div_u(x, 0.0) + mc.p(x, 0.0), 1e-12);
    }
}

TEST(StrongResidual, AllCasesPassOracle)
{
    for (const auto& name : case_names()) {
        const auto mc = get_case(name);
        const auto samples = random_interior_samples(50, mc.final_time);
        EXPECT_LE(eval_strong_residual(mc, samples), 1e-6) << name;
    }
}

TEST(StrongResidual, ZeroAndSteadyCases)
{
    const auto samples = random_interior_samples(20, 1.0);
    EXPECT_EQ(eval_strong_residual(zero_case(), samples), 0.0);
    EXPECT_LE(eval_strong_residual(steady_polynomial_case(), samples), 1e-6);
}

TEST(StrongResidual, DetectsWrongForcing)
{
    auto mc = get_case("ex1");
    const auto f = mc.f;
    mc.f = [f](const Point2& x, double t) { return (f(x, t) + Eigen::Vector2d(1e-3, 0.0)).eval(); };
    EXPECT_GT(eval_strong_residual(mc, random_interior_samples(10, 1.0)), 1e-5);
}

TEST(StrongResidual, SamplesAreInteriorAndDeterministic)
{
    const auto a = random_interior_samples(30, 2.0);
    const auto b = random_interior_samples(30, 2.0);
    ASSERT_EQ(a.size(), 30u);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].x, b[k].x);
        EXPECT_GT(a[k].x.minCoeff(), 0.0);
        EXPECT_LT(a[k].x.maxCoeff(), 1.0);
        EXPECT_GT(a[k].t, 0.0);
        EXPECT_LE(a[k].t, 2.0);
    }
}

TEST(NeumannData, Example2RightSide)
{
    const auto mc = get_case("ex2");
    const Eigen::Vector2d n(1.0, 0.0);
    for (double y : {0.2, 0.5, 0.9}) {
        const Point2 x(1.0, y);
        const double t = 0.6;
        const NeumannData d = eval_neumann_data(mc, x, t, n);
        EXPECT_NEAR(d.gamma, -mc.params.kappa * pi * std::exp(-t) * std::sin(pi * y), 1e-14);

        // Traction from central differences of u and the closed-form pressure.
        const double h = 1e-5;
        const Eigen::Vector2d dux = (mc.u(x + Point2(h, 0), t) - mc.u(x - Point2(h, 0), t)) / (2 * h);
        const Eigen::Vector2d duy = (mc.u(x + Point2(0, h), t) - mc.u(x - Point2(0, h), t)) / (2 * h);
        const double mu = mc.params.mu, lambda = mc.params.lambda;
        const Eigen::Vector2d beta(2 * mu * dux[0] + lambda * (dux[0] + duy[1]) - mc.p(x, t), mu * (duy[0] + dux[1]));
        EXPECT_LE((d.beta - beta).norm(), 1e-6);
    }
}

TEST(NeumannData, PureDirichletCaseRejected)
{
    EXPECT_THROW(eval_neumann_data(get_case("ex1"), Point2(1, 0.5), 0.5, Eigen::Vector2d(1, 0)), InvalidArgument);
}

TEST(NeumannData, VanishingFieldsGiveZeroData)
{
    auto mc = zero_case();
    mc.neumann = neumann_on_right_side();
    const NeumannData d = eval_neumann_data(mc, Point2(1.0, 0.3), 0.2, Eigen::Vector2d(1, 0));
    EXPECT_EQ(d.beta.norm(), 0.0);
    EXPECT_EQ(d.gamma, 0.0);
}
