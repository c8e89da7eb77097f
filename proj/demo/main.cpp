// Solves a user-defined problem: minimize x + y + z on the unit sphere.
#include <iostream>

#include "scp/scp.hpp"

int main() {
    using scp::Matrix;
    using scp::Vector;

    scp::Problem p;
    p.name = "sphere_sum";
    p.n = 3;
    p.m = 1;
    p.objective = [](const Vector& x) { return x.sum(); };
    p.gradient = [](const Vector& x) { return Vector(Vector::Ones(x.size())); };
    p.objective_hessian = [](const Vector& x) { return Matrix(Matrix::Zero(x.size(), x.size())); };
    p.constraints = [](const Vector& x) { return Vector(Vector::Constant(1, x.squaredNorm() - 1.0)); };
    p.jacobian = [](const Vector& x) { return Matrix(2.0 * x.transpose()); };
    p.constraint_hessians = [](const Vector& x) {
        return std::vector<Matrix>{2.0 * Matrix::Identity(x.size(), x.size())};
    };

    Vector x0(3);
    x0 << 1.0, 0.5, -0.5;
    scp::SolverConfig config;
    config.audit = true;
    const scp::SolveResult r = scp::solve(p, x0, config);

    std::cout << scp::to_string(r.status) << " after " << r.iterations() << " iterations\n"
              << "x = " << r.x_final.transpose() << "\n"
              << "lambda = " << r.lambda_final.transpose() << "\n"
              << "audit violations: " << r.audit_violations << "\n";
    return r.status == scp::SolveStatus::ConvergedSOSP ? 0 : 1;
}
