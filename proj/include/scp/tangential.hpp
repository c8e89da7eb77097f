#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "scp/linalg.hpp"

namespace scp {

/**
 * Reduced cubic model of the tangential subproblem in null-space coordinates
 * u = Z p:
 *
 *     m(p) = f0 + g_red'p + 1/2 p'H_red p + sigma/3 |p|^3,
 *
 * with g_red = Z'(g + H v) and H_red = Z'HZ. Since Z is orthonormal,
 * |P Z p| = |p| and this equals the projected model at u.
 */
struct ReducedCubicModel {
    double f0 = 0.0;
    Vector g_red;
    Matrix H_red;
    double sigma = 1.0;
    Matrix Z;
};

struct OracleSolution {
    Vector p;
    Vector u;
    double delta_m = 0.0;
    double cauchy_delta_m = 0.0;
    double grad_model_norm = 0.0;
    double lambda_min_red = 0.0;
};

struct CauchyStep {
    double alpha = 0.0;
    double delta_m = 0.0;
};

inline ReducedCubicModel build_reduced_model(const EvalPoint& eval, const FactorizedJacobian& F,
                                             const Matrix& H, const Vector& v, double sigma) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("build_reduced_model: sigma must be positive");
    }
    ReducedCubicModel model;
    model.f0 = eval.f;
    model.g_red = F.Z.transpose() * (eval.g + H * v);
    model.H_red = reduce_matrix(F, H);
    model.sigma = sigma;
    model.Z = F.Z;
    return model;
}

inline double model_value(const ReducedCubicModel& model, const Vector& p) {
    const double r = p.norm();
    return model.f0 + model.g_red.dot(p) + 0.5 * p.dot(model.H_red * p) +
           model.sigma / 3.0 * r * r * r;
}

/// m(0) - m(p), evaluated without the constant term.
inline double model_decrease(const ReducedCubicModel& model, const Vector& p) {
    const double r = p.norm();
    return -(model.g_red.dot(p) + 0.5 * p.dot(model.H_red * p) + model.sigma / 3.0 * r * r * r);
}

inline Vector model_gradient(const ReducedCubicModel& model, const Vector& p) {
    return model.g_red + model.H_red * p + model.sigma * p.norm() * p;
}

/**
 * Exact minimizer of phi(a) = m(-a g_red) - m(0) over a >= 0. The derivative
 * -|g|^2 + a g'Hg + sigma a^2 |g|^3 has exactly one nonnegative root.
 */
inline CauchyStep cauchy_point(const ReducedCubicModel& model) {
    const double gg = model.g_red.squaredNorm();
    if (gg == 0.0) {
        return {};
    }
    const double gn = std::sqrt(gg);
    const double curv = model.g_red.dot(model.H_red * model.g_red);
    const double cubic = model.sigma * gg * gn;

    double alpha;
    if (cubic == 0.0) {
        if (curv <= 0.0) {
            throw std::invalid_argument("cauchy_point: model unbounded below along -g");
        }
        alpha = gg / curv;
    } else {
        const double disc = std::sqrt(curv * curv + 4.0 * cubic * gg);
        alpha = curv > 0.0 ? 2.0 * gg / (curv + disc) : (disc - curv) / (2.0 * cubic);
    }
    const double decrease =
        alpha * gg - 0.5 * alpha * alpha * curv - cubic * alpha * alpha * alpha / 3.0;
    return {alpha, decrease};
}

/**
 * Global minimizer of the reduced cubic model.
 *
 * With H_red = Q diag(l) Q' and gamma = Q'g_red, the minimizer is
 * p(r) = -(H_red + sigma r I)^-1 g_red at the root r of |p(r)| = r on
 * sigma r >= max(0, -l_1). That root exists unless g_red has no component
 * along the leftmost eigenspace and the remaining components are too small;
 * in this hard case r = -l_1 / sigma and a leftmost eigenvector fills the
 * missing length.
 */
inline OracleSolution solve_cubic(const ReducedCubicModel& model, double delta = 0.1) {
    if (!(delta > 0.0 && delta < 1.0 / 6.0)) {
        throw std::invalid_argument("solve_cubic: delta must lie in (0, 1/6)");
    }
    const double sigma = model.sigma;
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("solve_cubic: sigma must be positive");
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const Index k = model.g_red.size();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(model.H_red);
    const Vector& lam = eig.eigenvalues();
    const Matrix& Q = eig.eigenvectors();
    Vector gamma = Q.transpose() * model.g_red;
    const double gnorm = model.g_red.norm();
    const double lam1 = lam(0);
    const double r_low = std::max(0.0, -lam1 / sigma);

    // Leftmost eigenspace, with a relative tolerance for clustered eigenvalues.
    const double lam_scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    Index left_dim = 1;
    while (left_dim < k && lam(left_dim) - lam1 <= 1e-12 * lam_scale) {
        ++left_dim;
    }
    const double left_component = gamma.head(left_dim).norm();
    const bool orthogonal_to_left = left_component <= 1e-12 * gnorm;
    const double gamma_sign0 = gamma(0);

    auto coefficients = [&](double r) {
        Vector y = Vector::Zero(k);
        for (Index i = 0; i < k; ++i) {
            if (gamma(i) != 0.0) {
                y(i) = -gamma(i) / (lam(i) + sigma * r);
            }
        }
        return y;
    };

    // Components along the leftmost eigenspace below the threshold count as zero.
    if (lam1 < 0.0 && orthogonal_to_left) {
        gamma.head(left_dim).setZero();
    }

    Vector y;
    if (gnorm == 0.0 && lam1 >= 0.0) {
        y = Vector::Zero(k);
    } else if (lam1 < 0.0 && orthogonal_to_left && coefficients(r_low).norm() <= r_low) {
        // hard case
        y = coefficients(r_low);
        const double fill = std::sqrt(std::max(0.0, r_low * r_low - y.squaredNorm()));
        y(0) = gamma_sign0 > 0.0 ? -fill : fill;
    } else {
        // phi(r) = |p(r)| - r is convex and decreasing on (r_low, inf); hi is
        // the root of |g| / (l_1 + sigma r) = r, where phi(hi) <= 0.
        const double root = std::sqrt(lam1 * lam1 + 4.0 * sigma * gnorm);
        double hi = lam1 >= 0.0 ? 2.0 * gnorm / (lam1 + root) : (root - lam1) / (2.0 * sigma);
        double lo = r_low;
        hi = std::max(hi, lo);
        double r = hi;
        bool converged = false;
        for (int iter = 0; iter < 500; ++iter) {
            const Vector yr = coefficients(r);
            const double norm_p = yr.norm();
            const double phi = norm_p - r;
            if (std::abs(phi) <= 4.0 * eps * r || hi - lo <= 4.0 * eps * hi) {
                converged = true;
                break;
            }
            if (phi > 0.0) {
                lo = r;
            } else {
                hi = r;
            }
            double dnorm = 0.0;
            for (Index i = 0; i < k; ++i) {
                const double den = lam(i) + sigma * r;
                dnorm += gamma(i) * gamma(i) / (den * den * den);
            }
            dnorm *= -sigma / norm_p;
            double next = r - phi / (dnorm - 1.0);
            if (!std::isfinite(next) || next <= lo || next >= hi) {
                next = 0.5 * (lo + hi);
            }
            r = next;
        }
        if (!converged) {
            throw SecularSolveFailed("secular equation did not converge (sigma = " +
                                     std::to_string(sigma) + ")");
        }
        y = coefficients(r);
    }

    OracleSolution sol;
    sol.p = Q * y;
    sol.u = model.Z * sol.p;
    sol.delta_m = model_decrease(model, sol.p);
    sol.cauchy_delta_m = cauchy_point(model).delta_m;
    sol.grad_model_norm = model_gradient(model, sol.p).norm();
    sol.lambda_min_red = lam1;
    return sol;
}

}  // namespace scp
