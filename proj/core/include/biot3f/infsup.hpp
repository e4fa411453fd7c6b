#pragma once

#include <string>
#include <vector>

namespace biot3f {

/// Displacement/stress pairs checked by the inf-sup estimator. P1P1 is the unstable control.
enum class InfSupPair { P2P0, P2P1, P1P1 };

std::string to_string(InfSupPair pair);
/// Accepts "p2-p0", "p2-p1", "p1-p1" and the three-field names "p2-p0-p1", "p2-p1-p1".
InfSupPair parse_infsup_pair(const std::string& name);

struct InfSupRow {
    int n = 0;
    int u_dofs = 0;        // free displacement dofs
    int q_dofs = 0;
    double beta = 0.0;     // sqrt of the smallest eigenvalue above the kernel tolerance
    int kernel_dim = 0;    // eigenvalues below the kernel tolerance
};

struct InfSupReport {
    InfSupPair pair;
    std::vector<InfSupRow> rows;

    double min_beta() const;
    double max_beta() const;
};

/// Relative tolerance (against the largest eigenvalue) below which an eigenvalue counts as kernel.
inline constexpr double infsup_kernel_tolerance = 1e-10;

/// Discrete inf-sup constants on unit-square meshes with n cells per side.
///
/// The right side x = 1 is traction-free, so constants are not in the kernel
/// of the discrete gradient. S is the vector H1-seminorm Gram matrix on the
/// free displacement dofs and M the stress mass matrix; beta^2 is the smallest
/// nonkernel eigenvalue of (B S^-1 B^T) x = beta^2 M x. Spurious kernel modes,
/// which only unstable pairs have, are counted in kernel_dim.
InfSupReport estimate_infsup(const std::vector<int>& ns, InfSupPair pair);

} // namespace biot3f
