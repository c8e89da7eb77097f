#pragma once

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "scp/scp.hpp"

namespace scp::testing {

/// Seeded generators for property tests. Every test owns its own Gen.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Vector vector(Index n, double lo = -1.0, double hi = 1.0) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
        return v;
    }

    Matrix matrix(Index rows, Index cols, double lo = -1.0, double hi = 1.0) {
        Matrix M(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) M(i, j) = uniform(lo, hi);
        return M;
    }

    Matrix symmetric(Index n, double scale = 1.0) {
        const Matrix M = matrix(n, n, -scale, scale);
        return 0.5 * (M + M.transpose());
    }

    /// Full row rank m x n matrix with condition number at most ~10.
    Matrix full_rank(Index m, Index n) {
        for (;;) {
            Matrix A = matrix(m, n);
            Eigen::JacobiSVD<Matrix> svd(A);
            const Vector s = svd.singularValues();
            if (s(m - 1) > 0.1 * s(0)) return A;
        }
    }

private:
    std::mt19937_64 rng_;
};

/// Orthonormal null-space basis from a QR of A', independent of the SVD path.
inline Matrix qr_null_basis(const Matrix& A) {
    const Index m = A.rows();
    const Index n = A.cols();
    Eigen::HouseholderQR<Matrix> qr(A.transpose());
    const Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
    return Q.rightCols(n - m);
}

/// Minimum-norm solution of A x = b through the normal equations.
inline Vector normal_equations_min_norm(const Matrix& A, const Vector& b) {
    const Matrix AAt = A * A.transpose();
    return A.transpose() * AAt.ldlt().solve(b);
}

inline double smallest_eigenvalue(const Matrix& S) {
    Eigen::EigenSolver<Matrix> es(S, false);
    double lo = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < S.rows(); ++i) lo = std::min(lo, es.eigenvalues()(i).real());
    return lo;
}

/// Random reduced cubic model of scale ~1; every fifth one is a hard case.
inline ReducedCubicModel random_model(Gen& gen, Index dim, int index) {
    ReducedCubicModel model;
    model.H_red = gen.symmetric(dim, 1.5);
    model.g_red = gen.vector(dim);
    model.sigma = gen.uniform(0.5, 3.0);
    model.Z = Matrix::Identity(dim, dim);
    if (index % 5 == 4) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(model.H_red);
        if (eig.eigenvalues()(0) < 0.0) {
            const Vector q = eig.eigenvectors().col(0);
            model.g_red -= q.dot(model.g_red) * q;
        }
    }
    return model;
}

/**
 * Global minimum of the reduced cubic model by dense grid search (spacing h)
 * over a box that provably contains every minimizer, followed by a damped
 * Newton polish from the best grid point.
 */
inline double grid_global_min(const ReducedCubicModel& model, double h = 1e-3) {
    const Index dim = model.g_red.size();
    const double g = model.g_red.norm();
    const double neg = std::max(0.0, -smallest_eigenvalue(model.H_red));
    const double s = model.sigma;
    // m(p) > 0 = m(0) outside this radius.
    const double radius =
        (0.5 * neg + std::sqrt(0.25 * neg * neg + 4.0 * s * g / 3.0)) / (2.0 * s / 3.0) + 2.0 * h;
    const int steps = static_cast<int>(std::ceil(radius / h));

    Vector best = Vector::Zero(dim);
    double best_value = model_value(model, best);
    Vector p(dim);
    if (dim == 1) {
        for (int i = -steps; i <= steps; ++i) {
            p(0) = i * h;
            const double val = model_value(model, p);
            if (val < best_value) {
                best_value = val;
                best = p;
            }
        }
    } else {
        const Matrix& H = model.H_red;
        for (int i = -steps; i <= steps; ++i) {
            const double a = i * h;
            for (int j = -steps; j <= steps; ++j) {
                const double b = j * h;
                const double r = std::sqrt(a * a + b * b);
                const double val = model.f0 + model.g_red(0) * a + model.g_red(1) * b +
                                   0.5 * (H(0, 0) * a * a + 2.0 * H(0, 1) * a * b + H(1, 1) * b * b) +
                                   s / 3.0 * r * r * r;
                if (val < best_value) {
                    best_value = val;
                    best(0) = a;
                    best(1) = b;
                }
            }
        }
    }

    // Newton polish with backtracking on the model value.
    Vector x = best;
    double fx = model_value(model, x);
    for (int it = 0; it < 50; ++it) {
        const double r = x.norm();
        const Vector grad = model_gradient(model, x);
        Matrix hess = model.H_red + s * r * Matrix::Identity(dim, dim);
        if (r > 0.0) hess += s * x * x.transpose() / r;
        Eigen::LDLT<Matrix> ldlt(hess);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) break;
        const Vector step = ldlt.solve(grad);
        double t = 1.0;
        bool moved = false;
        while (t > 1e-8) {
            const Vector trial = x - t * step;
            const double ft = model_value(model, trial);
            if (ft < fx) {
                x = trial;
                fx = ft;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
    return std::min(fx, best_value);
}

/// A recorded iteration with one deliberate defect and the check it should trip.
struct Fixture {
    std::string name;
    IterationRecord record;
    SolverConfig config;
    std::string expected_check;
};

inline SolveResult audited_run(const std::string& name, double eps = 1e-8) {
    const Problem p = builtin_problem(name);
    SolverConfig config;
    config.set_tolerance(eps);
    config.audit = true;
    return solve(p, p.default_start, config);
}

/**
 * 10% longer tangential step on the first iteration of linear_eq_quadratic.
 * The reduced Hessian there is positive definite and the null space is 2-D,
 * so the longer step breaks the gradient residual bound while still beating
 * the Cauchy decrease.
 */
inline Fixture perturbed_tangential_fixture() {
    const SolveResult run = audited_run("linear_eq_quadratic");
    Fixture fx{"tangential step scaled by 1.1", run.history.front(), SolverConfig{},
               "oracle_gradient_residual"};
    fx.record.context.u *= 1.1;
    fx.record.norm_u *= 1.1;
    return fx;
}

/// Merit parameter set to half the candidate at an infeasible iteration.
inline Fixture low_mu_fixture() {
    for (const auto& name : builtin_problem_names) {
        const SolveResult run = audited_run(std::string(name));
        for (const auto& rec : run.history) {
            if (rec.c_l1 > 1e-3 && rec.context.mu_candidate > 1e-3) {
                Fixture fx{"mu below the candidate", rec, SolverConfig{}, "merit_model_decrease"};
                fx.record.mu = 0.5 * rec.context.mu_candidate;
                return fx;
            }
        }
    }
    throw std::logic_error("no catalog iteration with a positive merit candidate");
}

/// sigma_{k+1} outside every admissible update interval.
inline Fixture illegal_sigma_fixture() {
    const SolveResult run = audited_run("circle_quadratic");
    const SolverConfig config;
    Fixture fx{"sigma update out of range", run.history.front(), config, "sigma_update"};
    fx.record.context.sigma_next = 10.0 * config.gamma2 * fx.record.sigma;
    return fx;
}

inline std::vector<Fixture> negative_controls() {
    return {perturbed_tangential_fixture(), low_mu_fixture(), illegal_sigma_fixture()};
}

/// Box of half-width 1 around the known solution, or around the default start.
inline Vector random_point_near(const Problem& p, Gen& gen) {
    const Vector center = p.known_solution ? p.known_solution->x : p.default_start;
    return center + gen.vector(p.n);
}

}  // namespace scp::testing
