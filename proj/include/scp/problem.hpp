#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scp/errors.hpp"

namespace scp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// A primal-dual pair known to satisfy the second-order sufficient conditions.
struct KnownSolution {
    Vector x;
    Vector lambda;
};

/**
 * Smooth equality-constrained problem
 *
 *     min f(x)  s.t.  c(x) = 0,   f : R^n -> R,  c : R^n -> R^m,  1 <= m < n.
 *
 * The Jacobian has the constraint gradients as rows. All callbacks must be
 * reentrant; the solver calls them from a single thread.
 */
struct Problem {
    std::string name;
    Index n = 0;
    Index m = 0;

    std::function<double(const Vector&)> objective;
    std::function<Vector(const Vector&)> gradient;
    std::function<Matrix(const Vector&)> objective_hessian;
    std::function<Vector(const Vector&)> constraints;
    std::function<Matrix(const Vector&)> jacobian;
    std::function<std::vector<Matrix>(const Vector&)> constraint_hessians;

    std::optional<KnownSolution> known_solution;
    /// Starting point used when the caller supplies none.
    Vector default_start;

    void validate() const {
        if (m < 1 || m >= n) {
            throw std::invalid_argument("problem '" + name + "': need 1 <= m < n");
        }
        if (!objective || !gradient || !objective_hessian || !constraints || !jacobian ||
            !constraint_hessians) {
            throw std::invalid_argument("problem '" + name + "': missing callback");
        }
    }
};

/// All problem quantities at one point. Immutable once built by evaluate().
struct EvalPoint {
    Vector x;
    double f = 0.0;
    Vector g;
    Vector c;
    double c_l1 = 0.0;
    Matrix A;
    Matrix f_hess;
    std::vector<Matrix> c_hess;
};

namespace detail {

inline void require_finite(bool ok, const char* what, const std::string& name) {
    if (!ok) {
        throw NonFiniteValue(std::string("non-finite ") + what + " in problem '" + name + "'");
    }
}

inline void require_shape(bool ok, const char* what, const std::string& name) {
    if (!ok) {
        throw std::invalid_argument(std::string("dimension mismatch in ") + what + " of problem '" +
                                    name + "'");
    }
}

}  // namespace detail

inline EvalPoint evaluate(const Problem& problem, const Vector& x) {
    if (x.size() != problem.n) {
        throw std::invalid_argument("evaluate: x has length " + std::to_string(x.size()) +
                                    ", expected " + std::to_string(problem.n));
    }
    const auto& name = problem.name;
    EvalPoint e;
    e.x = x;
    e.f = problem.objective(x);
    e.g = problem.gradient(x);
    e.c = problem.constraints(x);
    e.A = problem.jacobian(x);
    e.f_hess = problem.objective_hessian(x);
    e.c_hess = problem.constraint_hessians(x);

    detail::require_shape(e.g.size() == problem.n, "gradient", name);
    detail::require_shape(e.c.size() == problem.m, "constraints", name);
    detail::require_shape(e.A.rows() == problem.m && e.A.cols() == problem.n, "jacobian", name);
    detail::require_shape(e.f_hess.rows() == problem.n && e.f_hess.cols() == problem.n,
                          "objective hessian", name);
    detail::require_shape(static_cast<Index>(e.c_hess.size()) == problem.m,
                          "constraint hessians", name);
    for (const auto& h : e.c_hess) {
        detail::require_shape(h.rows() == problem.n && h.cols() == problem.n,
                              "constraint hessians", name);
    }

    detail::require_finite(std::isfinite(e.f), "objective", name);
    detail::require_finite(e.g.allFinite(), "gradient", name);
    detail::require_finite(e.c.allFinite(), "constraints", name);
    detail::require_finite(e.A.allFinite(), "jacobian", name);
    detail::require_finite(e.f_hess.allFinite(), "objective hessian", name);
    for (const auto& h : e.c_hess) {
        detail::require_finite(h.allFinite(), "constraint hessian", name);
    }
    e.c_l1 = e.c.lpNorm<1>();
    return e;
}

/// H = hess f + sum_i lambda_i hess c_i, returned exactly symmetric.
inline Matrix lagrangian_hessian(const EvalPoint& e, const Vector& lambda) {
    if (lambda.size() != static_cast<Index>(e.c_hess.size())) {
        throw std::invalid_argument("lagrangian_hessian: multiplier length mismatch");
    }
    Matrix H = e.f_hess;
    for (std::size_t i = 0; i < e.c_hess.size(); ++i) {
        H.noalias() += lambda(static_cast<Index>(i)) * e.c_hess[i];
    }
    Matrix Hs = 0.5 * (H + H.transpose());
    detail::require_finite(Hs.allFinite(), "lagrangian hessian", "");
    return Hs;
}

}  // namespace scp
