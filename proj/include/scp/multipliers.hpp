#pragma once

#include "scp/linalg.hpp"

namespace scp {

/**
 * Least-squares multipliers lambda* = -(A A')^-1 A g.
 *
 * The residual bound |A(g + A'lambda)| <= r_lambda |v| admits inexact
 * estimates; the direct solve meets it for every r_lambda >= 0, so the exact
 * estimator is always returned.
 */
inline Vector estimate_multipliers(const FactorizedJacobian& F, const Vector& g,
                                   double r_lambda = 0.0, double norm_v = 0.0) {
    if (g.size() != F.n()) {
        throw std::invalid_argument("estimate_multipliers: gradient length mismatch");
    }
    if (r_lambda < 0.0 || norm_v < 0.0) {
        throw std::invalid_argument("estimate_multipliers: negative tolerance");
    }
    return -apply_pseudoinverse_transpose(F, g);
}

}  // namespace scp
