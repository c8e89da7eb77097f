#pragma once

#include <array>
#include <string>
#include <string_view>

#include "scp/problem.hpp"

namespace scp {

namespace catalog {

inline Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double value : values) {
        v(i++) = value;
    }
    return v;
}

/// min x1  s.t.  x1^2 + x2^2 = 1. Minimizer (-1, 0) with multiplier 1/2.
inline Problem circle_quadratic() {
    Problem p;
    p.name = "circle_quadratic";
    p.n = 2;
    p.m = 1;
    p.objective = [](const Vector& x) { return x(0); };
    p.gradient = [](const Vector&) { return vec({1.0, 0.0}); };
    p.objective_hessian = [](const Vector&) { return Matrix(Matrix::Zero(2, 2)); };
    p.constraints = [](const Vector& x) { return vec({x.squaredNorm() - 1.0}); };
    p.jacobian = [](const Vector& x) { return Matrix(2.0 * x.transpose()); };
    p.constraint_hessians = [](const Vector&) {
        return std::vector<Matrix>{2.0 * Matrix::Identity(2, 2)};
    };
    p.known_solution = KnownSolution{vec({-1.0, 0.0}), vec({0.5})};
    p.default_start = vec({0.5, 0.5});
    return p;
}

/**
 * Convex quadratic with two affine constraints:
 * min 1/2 x'Qx + q'x  s.t.  Bx = b, Q positive definite.
 * The solution comes from the KKT system.
 */
inline Problem linear_eq_quadratic() {
    Matrix Q(4, 4);
    Q << 4.0, 1.0, 0.0, 0.0,
         1.0, 3.0, 1.0, 0.0,
         0.0, 1.0, 2.0, 0.5,
         0.0, 0.0, 0.5, 1.0;
    const Vector q = vec({1.0, -2.0, 0.5, -1.0});
    Matrix B(2, 4);
    B << 1.0, 1.0, 1.0, 1.0,
         1.0, -1.0, 2.0, 0.0;
    const Vector b = vec({1.0, 2.0});

    Problem p;
    p.name = "linear_eq_quadratic";
    p.n = 4;
    p.m = 2;
    p.objective = [Q, q](const Vector& x) { return 0.5 * x.dot(Q * x) + q.dot(x); };
    p.gradient = [Q, q](const Vector& x) { return Vector(Q * x + q); };
    p.objective_hessian = [Q](const Vector&) { return Q; };
    p.constraints = [B, b](const Vector& x) { return Vector(B * x - b); };
    p.jacobian = [B](const Vector&) { return B; };
    p.constraint_hessians = [](const Vector&) {
        return std::vector<Matrix>(2, Matrix::Zero(4, 4));
    };

    Matrix K = Matrix::Zero(6, 6);
    K.topLeftCorner(4, 4) = Q;
    K.topRightCorner(4, 2) = B.transpose();
    K.bottomLeftCorner(2, 4) = B;
    Vector rhs(6);
    rhs << -q, b;
    const Vector sol = K.fullPivLu().solve(rhs);
    p.known_solution = KnownSolution{sol.head(4), sol.tail(2)};
    p.default_start = vec({3.0, -2.0, 1.0, 4.0});
    return p;
}

/**
 * The classical Maratos example
 * min 2(x1^2 + x2^2 - 1) - x1  s.t.  x1^2 + x2^2 = 1,
 * solved by (1, 0) with multiplier -3/2. Full SQP steps from feasible points
 * near the solution increase the l1 merit function.
 */
inline Problem maratos() {
    Problem p;
    p.name = "maratos";
    p.n = 2;
    p.m = 1;
    p.objective = [](const Vector& x) { return 2.0 * (x.squaredNorm() - 1.0) - x(0); };
    p.gradient = [](const Vector& x) { return Vector(4.0 * x - vec({1.0, 0.0})); };
    p.objective_hessian = [](const Vector&) { return Matrix(4.0 * Matrix::Identity(2, 2)); };
    p.constraints = [](const Vector& x) { return vec({x.squaredNorm() - 1.0}); };
    p.jacobian = [](const Vector& x) { return Matrix(2.0 * x.transpose()); };
    p.constraint_hessians = [](const Vector&) {
        return std::vector<Matrix>{2.0 * Matrix::Identity(2, 2)};
    };
    p.known_solution = KnownSolution{vec({1.0, 0.0}), vec({-1.5})};
    p.default_start = vec({0.9, 0.4});
    return p;
}

/**
 * Rosenbrock valley intersected with a sphere through its minimizer:
 * f = (1 - x1)^2 + 100 (x2 - x1^2)^2 + x3^2 + c(x) / 2,   c = |x|^2 - 2.
 * The added c/2 term keeps the minimizer (1, 1, 0) and moves its multiplier
 * to -1/2, so the constraint is active in the optimality conditions.
 */
inline Problem rosenbrock_sphere() {
    constexpr double kValley = 100.0;
    Problem p;
    p.name = "rosenbrock_sphere";
    p.n = 3;
    p.m = 1;
    p.objective = [](const Vector& x) {
        const double a = 1.0 - x(0);
        const double b = x(1) - x(0) * x(0);
        return a * a + kValley * b * b + x(2) * x(2) + 0.5 * (x.squaredNorm() - 2.0);
    };
    p.gradient = [](const Vector& x) {
        const double b = x(1) - x(0) * x(0);
        Vector g(3);
        g(0) = -2.0 * (1.0 - x(0)) - 4.0 * kValley * x(0) * b + x(0);
        g(1) = 2.0 * kValley * b + x(1);
        g(2) = 2.0 * x(2) + x(2);
        return g;
    };
    p.objective_hessian = [](const Vector& x) {
        Matrix h = Matrix::Zero(3, 3);
        h(0, 0) = 2.0 - 4.0 * kValley * (x(1) - 3.0 * x(0) * x(0)) + 1.0;
        h(0, 1) = h(1, 0) = -4.0 * kValley * x(0);
        h(1, 1) = 2.0 * kValley + 1.0;
        h(2, 2) = 3.0;
        return h;
    };
    p.constraints = [](const Vector& x) { return vec({x.squaredNorm() - 2.0}); };
    p.jacobian = [](const Vector& x) { return Matrix(2.0 * x.transpose()); };
    p.constraint_hessians = [](const Vector&) {
        return std::vector<Matrix>{2.0 * Matrix::Identity(3, 3)};
    };
    p.known_solution = KnownSolution{vec({1.0, 1.0, 0.0}), vec({-0.5})};
    p.default_start = vec({0.5, -1.0, 1.0});
    return p;
}

/**
 * min x1^2 - x2^2 + x3^2 / 2  s.t.  |x|^2 = 1, started at the north pole.
 * (0, 0, 1) is feasible and first-order stationary with multiplier -1/2, but
 * the reduced Lagrangian Hessian there is diag(1, -3). The minimizers are
 * (0, +-1, 0) with multiplier 1.
 */
inline Problem saddle_escape() {
    Problem p;
    p.name = "saddle_escape";
    p.n = 3;
    p.m = 1;
    p.objective = [](const Vector& x) { return x(0) * x(0) - x(1) * x(1) + 0.5 * x(2) * x(2); };
    p.gradient = [](const Vector& x) { return vec({2.0 * x(0), -2.0 * x(1), x(2)}); };
    p.objective_hessian = [](const Vector&) {
        return Matrix(vec({2.0, -2.0, 1.0}).asDiagonal());
    };
    p.constraints = [](const Vector& x) { return vec({x.squaredNorm() - 1.0}); };
    p.jacobian = [](const Vector& x) { return Matrix(2.0 * x.transpose()); };
    p.constraint_hessians = [](const Vector&) {
        return std::vector<Matrix>{2.0 * Matrix::Identity(3, 3)};
    };
    p.default_start = vec({0.0, 0.0, 1.0});
    return p;
}

}  // namespace catalog

inline constexpr std::array<std::string_view, 5> builtin_problem_names = {
    "circle_quadratic", "linear_eq_quadratic", "maratos", "rosenbrock_sphere", "saddle_escape"};

inline Problem builtin_problem(std::string_view name) {
    if (name == "circle_quadratic") return catalog::circle_quadratic();
    if (name == "linear_eq_quadratic") return catalog::linear_eq_quadratic();
    if (name == "maratos") return catalog::maratos();
    if (name == "rosenbrock_sphere") return catalog::rosenbrock_sphere();
    if (name == "saddle_escape") return catalog::saddle_escape();
    throw UnknownProblem(std::string(name));
}

}  // namespace scp
