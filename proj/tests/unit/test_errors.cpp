#include "biot3f/errors.hpp"
#include "biot3f/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

using namespace biot3f;

TEST(ObservedOrder, ReferenceValues)
{
    // Reference orders are truncated, not rounded, to four decimals.
    EXPECT_NEAR(*observed_order(6.8421e-04, 1.4486e-04), 2.2397, 1e-4);
    EXPECT_NEAR(*observed_order(3.8459e-03, 1.9797e-03), 0.9580, 1e-4);
    EXPECT_NEAR(*observed_order(1.2572e-02, 5.7283e-03), 1.1340, 1e-4);
    EXPECT_NEAR(*observed_order(2.6829e-03, 6.7188e-04), 1.9975, 1e-4);
}

TEST(ObservedOrder, EdgeCases)
{
    EXPECT_EQ(*observed_order(0.3, 0.3), 0.0);
    EXPECT_NEAR(*observed_order(1.0, 0.25), 2.0, 1e-15);
    EXPECT_FALSE(observed_order(0.0, 1.0).has_value());
    EXPECT_FALSE(observed_order(1.0, 0.0).has_value());
    EXPECT_FALSE(observed_order(-1.0, 0.5).has_value());
    EXPECT_FALSE(observed_order(std::nan(""), 0.5).has_value());
}

TEST(ComputeErrors, InterpolantStateHasZeroInterpolantError)
{
    const auto mc = get_case("ex1");
    for (auto pair : {ElementPair::P2P0P1, ElementPair::P2P1P1}) {
        const Spaces s = make_spaces(std::make_shared<const Mesh>(build_unit_square(4)), pair);
        const double t = 1.0;
        const FieldState st{interpolate(s.u, VectorField([&](const Point2& x) { return mc.u(x, t); })),
                            interpolate(s.q, ScalarField([&](const Point2& x) { return mc.q(x, t); })),
                            interpolate(s.p, ScalarField([&](const Point2& x) { return mc.p(x, t); })), t};
        const ErrorReport r = compute_errors(st, mc, s);
        for (double e : r.interpolant.as_array()) EXPECT_LE(e, 1e-13);
        const auto ex = r.exact.as_array();
        const auto in = r.interpolation.as_array();
        for (std::size_t k = 0; k < 5; ++k) {
            EXPECT_GT(ex[k], 0.0);
            EXPECT_NEAR(ex[k], in[k], 1e-13);
        }
    }
}

TEST(ComputeErrors, TriangleInequalityAcrossNormSets)
{
    const auto mc = get_case("ex3");
    const RunResult r = run(mc, ElementPair::P2P1P1, 4, parse_tau_rule("h"));
    const ErrorReport e = compute_errors(r.final_state, mc, r.spaces);
    const auto a = e.exact.as_array(), b = e.interpolant.as_array(), c = e.interpolation.as_array();
    for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_GE(a[k], 0.0);
        EXPECT_LE(std::abs(a[k] - b[k]), c[k] * (1.0 + 1e-12) + 1e-15) << norm_names[k];
    }
}

TEST(ComputeErrors, KnownDiscreteDifference)
{
    // Perturbing the pressure interpolant by a constant at interior nodes changes only the pressure norms.
    const auto mc = get_case("ex1");
    const Spaces s = make_spaces(std::make_shared<const Mesh>(build_unit_square(1)), ElementPair::P2P0P1);
    const double t = 0.5;
    FieldState st{interpolate(s.u, VectorField([&](const Point2& x) { return mc.u(x, t); })),
                  interpolate(s.q, ScalarField([&](const Point2& x) { return mc.q(x, t); })),
                  interpolate(s.p, ScalarField([&](const Point2& x) { return mc.p(x, t); })), t};
    st.p.array() += 0.25;
    const ErrorReport r = compute_errors(st, mc, s);
    EXPECT_NEAR(r.interpolant.l2_p, 0.25, 1e-14);
    EXPECT_NEAR(r.interpolant.h1_p, 0.0, 1e-14);
    EXPECT_EQ(r.interpolant.energy_u, 0.0);
}
