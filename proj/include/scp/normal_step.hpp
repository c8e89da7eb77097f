#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "scp/linalg.hpp"

namespace scp {

/// Range-space component v = beta * v_c of the trial step.
struct NormalStep {
    Vector v_c;
    Vector v;
    double beta = 1.0;
    double residual_l1 = 0.0;  // |A v_c + c|_1
};

struct NormalSolve {
    Vector v_c;
    double residual_l1 = 0.0;
};

namespace detail {

/// Rounding-level slack for residuals of a direct range-space solve.
inline double solve_roundoff(const FactorizedJacobian& F, const Vector& x, const Vector& b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return 64.0 * eps * static_cast<double>(F.m()) *
           (F.largest_singular_value * x.lpNorm<1>() + b.lpNorm<1>());
}

}  // namespace detail

/**
 * v_c in range(A') with |A v_c + c|_1 <= r_v min{|c|_1, |v_c|^3}.
 *
 * The direct pseudoinverse solve is exact up to rounding; the bound is
 * certified afterwards, with a few rounds of iterative refinement when the
 * rounding residual alone exceeds it.
 */
inline NormalSolve compute_vc(const FactorizedJacobian& F, const Vector& c, double r_v) {
    if (r_v < 0.0) {
        throw std::invalid_argument("compute_vc: r_v must be nonnegative");
    }
    NormalSolve out;
    if (c.lpNorm<1>() == 0.0) {
        out.v_c = Vector::Zero(F.n());
        return out;
    }
    out.v_c = range_least_squares(F, c);
    for (int refine = 0;; ++refine) {
        const Vector r = F.A * out.v_c + c;
        out.residual_l1 = r.lpNorm<1>();
        const double bound = r_v * std::min(c.lpNorm<1>(), std::pow(out.v_c.norm(), 3));
        if (out.residual_l1 <= bound + detail::solve_roundoff(F, out.v_c, c)) {
            return out;
        }
        if (refine == 3) {
            throw ResidualConditionUnmet("normal step residual " + std::to_string(out.residual_l1) +
                                         " exceeds bound " + std::to_string(bound));
        }
        out.v_c += range_least_squares(F, r);
    }
}

/// Upper endpoint of the admissible interval, min{1, 1 / (|v_c| sqrt(sigma))}.
inline double select_beta(double norm_vc, double sigma, double /*theta*/ = 1.0) {
    if (norm_vc <= 0.0) {
        return 1.0;
    }
    return std::min(1.0, 1.0 / (norm_vc * std::sqrt(sigma)));
}

/// The closed interval of admissible feasibility parameters.
inline std::pair<double, double> beta_interval(double norm_vc, double sigma, double theta) {
    if (norm_vc <= 0.0) {
        return {1.0, 1.0};
    }
    const double scale = norm_vc * std::sqrt(sigma);
    return {std::min(1.0, theta / scale), std::min(1.0, 1.0 / scale)};
}

inline NormalStep assemble_normal(const Vector& v_c, double residual_l1, double beta) {
    NormalStep s;
    s.v_c = v_c;
    s.beta = v_c.isZero(0.0) ? 1.0 : beta;
    s.v = s.beta * v_c;
    s.residual_l1 = residual_l1;
    return s;
}

}  // namespace scp
