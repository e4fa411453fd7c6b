#pragma once

#include "biot3f/biot_solver.hpp"
#include "biot3f/manufactured.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace biot3f {

/// The five norms reported per run, in table column order.
struct NormSet {
    double energy_u = 0.0;  // ||eps(.)|| of the displacement
    double l2_u = 0.0;
    double l2_q = 0.0;
    double h1_p = 0.0;      // ||grad(.)|| of the pressure
    double l2_p = 0.0;

    std::array<double, 5> as_array() const { return {energy_u, l2_u, l2_q, h1_p, l2_p}; }
};

inline constexpr std::array<std::string_view, 5> norm_names = {"energy_u", "l2_u", "l2_q", "h1_p", "l2_p"};

/// Errors of a discrete state at time t.
///
/// `interpolant` measures I_h(exact) - discrete, the quantity tabulated in the
/// convergence tables; `exact` measures exact - discrete; `interpolation`
/// measures exact - I_h(exact). Interpolants are nodal: P2 for u, P1 for p,
/// P1 nodal or centroid value (P0) for q.
struct ErrorReport {
    NormSet interpolant;
    NormSet exact;
    NormSet interpolation;
};

ErrorReport compute_errors(const FieldState& state, const ManufacturedCase& mc, const Spaces& spaces);

/// log2(e_coarse / e_fine); empty when either error is not strictly positive.
std::optional<double> observed_order(double e_coarse, double e_fine);

} // namespace biot3f
