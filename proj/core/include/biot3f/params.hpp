#pragma once

#include "biot3f/error.hpp"

namespace biot3f {

/// Lame constants and permeability; all strictly positive.
struct PhysicalParams {
    double mu = 1.0;
    double lambda = 1.0;
    double kappa = 1.0;

    void validate() const
    {
        BIOT3F_THROW_IF(!(mu > 0.0) || !(lambda > 0.0) || !(kappa > 0.0), InvalidArgument,
                        "PhysicalParams: mu, lambda and kappa must be strictly positive");
    }
};

} // namespace biot3f
