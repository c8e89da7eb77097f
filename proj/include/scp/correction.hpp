#pragma once

#include <cmath>

#include "scp/normal_step.hpp"

namespace scp {

/// Near-feasibility gate for correction attempts: |v_c| <= zeta / sqrt(sigma).
inline bool in_correction_region(double norm_vc, double sigma, double zeta) {
    return norm_vc <= zeta / std::sqrt(sigma);
}

/**
 * Second-order correction w in range(A') with |A w + c(x + d)| <= r_w |d|^3,
 * where A is the Jacobian at x (not at the trial point).
 */
inline Vector compute_correction(const FactorizedJacobian& F, const Vector& c_trial, double r_w,
                                 double norm_d) {
    if (r_w < 0.0) {
        throw std::invalid_argument("compute_correction: r_w must be nonnegative");
    }
    if (c_trial.lpNorm<1>() == 0.0) {
        return Vector::Zero(F.n());
    }
    Vector w = range_least_squares(F, c_trial);
    for (int refine = 0;; ++refine) {
        const Vector r = F.A * w + c_trial;
        const double bound = r_w * norm_d * norm_d * norm_d;
        if (r.norm() <= bound + detail::solve_roundoff(F, w, c_trial)) {
            return w;
        }
        if (refine == 3) {
            throw ResidualConditionUnmet("correction residual " + std::to_string(r.norm()) +
                                         " exceeds bound " + std::to_string(bound));
        }
        w += range_least_squares(F, r);
    }
}

}  // namespace scp
