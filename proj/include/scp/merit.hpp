#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "scp/problem.hpp"

namespace scp {

/// Penalty parameter of the l1 merit function across two consecutive iterations.
struct MeritState {
    double mu = 1.0;
    double mu_prev = 1.0;
    double mu_candidate = 0.0;
};

/// phi(x, mu) = f(x) + mu |c(x)|_1
inline double merit_value(const EvalPoint& eval, double mu) { return eval.f + mu * eval.c_l1; }

/// q(d) = f + g'd + 1/2 d'Hd + sigma/3 |d|^3 + mu |c + A d|_1
inline double model_q(const EvalPoint& eval, const Matrix& H, const Vector& d, double sigma,
                      double mu) {
    const double r = d.norm();
    return eval.f + eval.g.dot(d) + 0.5 * d.dot(H * d) + sigma / 3.0 * r * r * r +
           mu * (eval.c + eval.A * d).lpNorm<1>();
}

/// q(0) - q(d), formed without the f term so small reductions keep their digits.
inline double predicted_reduction(const EvalPoint& eval, const Matrix& H, const Vector& d,
                                  double sigma, double mu) {
    const double r = d.norm();
    return -(eval.g.dot(d) + 0.5 * d.dot(H * d) + sigma / 3.0 * r * r * r) +
           mu * (eval.c_l1 - (eval.c + eval.A * d).lpNorm<1>());
}

/**
 * Smallest penalty parameter for which the merit model decrease splits into
 * the tangential model decrease plus tau * mu * beta * |c|_1. Zero at
 * feasible points; negative values are legal.
 */
inline double mu_candidate(const Vector& g, const Matrix& H, const Vector& v, const Vector& d,
                           const Vector& u, double sigma, double beta, double c_l1, double r_v,
                           double tau) {
    if (c_l1 == 0.0) {
        return 0.0;
    }
    const double nd = d.norm();
    const double nu = u.norm();
    const double numerator =
        g.dot(v) + 0.5 * v.dot(H * v) + sigma / 3.0 * (nd * nd * nd - nu * nu * nu);
    return numerator / ((1.0 - r_v - tau) * beta * c_l1);
}

/// mu = nu * candidate when the candidate exceeds the previous value, else unchanged.
inline MeritState update_mu(const MeritState& state, double candidate, double nu) {
    if (!(nu > 1.0)) {
        throw std::invalid_argument("update_mu: nu must exceed 1");
    }
    MeritState next;
    next.mu_prev = state.mu;
    next.mu_candidate = candidate;
    next.mu = state.mu < candidate ? nu * candidate : state.mu;
    return next;
}

inline double ratio(double phi_x, double phi_trial, double delta_q) {
    if (!(delta_q > 0.0)) {
        throw NonpositivePredictedReduction("ratio: predicted reduction " +
                                            std::to_string(delta_q) + " is not positive");
    }
    return (phi_x - phi_trial) / delta_q;
}

/**
 * ratio() with a rounding guard: when the predicted reduction is below the
 * precision with which phi itself is known, a trial point whose merit value
 * is not measurably worse counts as a perfect model match (ratio 1).
 */
inline double guarded_ratio(double phi_x, double phi_trial, double delta_q) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double noise = 1e2 * eps * std::max({1.0, std::abs(phi_x), std::abs(phi_trial)});
    if (delta_q > 0.0 && delta_q <= noise && phi_x - phi_trial >= -noise) {
        return 1.0;
    }
    return ratio(phi_x, phi_trial, delta_q);
}

}  // namespace scp
