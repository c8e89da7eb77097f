#pragma once

#include <utility>

#include <Eigen/Dense>

#include "scp/errors.hpp"
#include "scp/problem.hpp"

namespace scp {

/**
 * Dense SVD of the constraint Jacobian A = U S V' (m x n, m < n).
 *
 * The trailing n - m right singular vectors form the orthonormal null-space
 * basis Z; the leading m span range(A'). All range-space solves go through
 * the pseudoinverse A+ = V_r S^-1 U', which returns minimum-norm solutions
 * lying exactly in range(A').
 */
struct FactorizedJacobian {
    Matrix A;
    Index rank = 0;
    Matrix Z;
    double smallest_singular_value = 0.0;
    double largest_singular_value = 0.0;

    // factorization payload
    Matrix U;
    Vector singular_values;
    Matrix V_range;

    Index n() const { return A.cols(); }
    Index m() const { return A.rows(); }
};

inline FactorizedJacobian factorize_jacobian(const Matrix& A, double rank_tol = 1e-10) {
    if (A.rows() < 1 || A.rows() >= A.cols()) {
        throw std::invalid_argument("factorize_jacobian: need 1 <= m < n");
    }
    if (!(rank_tol > 0.0)) {
        throw std::invalid_argument("factorize_jacobian: rank_tol must be positive");
    }
    const Index m = A.rows();
    const Index n = A.cols();
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);

    FactorizedJacobian F;
    F.A = A;
    F.singular_values = svd.singularValues();
    F.largest_singular_value = F.singular_values(0);
    F.smallest_singular_value = F.singular_values(m - 1);
    F.rank = m;
    if (!(F.smallest_singular_value >= rank_tol * F.largest_singular_value) ||
        F.largest_singular_value == 0.0) {
        F.rank = (F.singular_values.array() >= rank_tol * F.largest_singular_value).count();
        throw RankDeficient("constraint Jacobian is rank deficient: sigma_min = " +
                            std::to_string(F.smallest_singular_value) +
                            ", sigma_max = " + std::to_string(F.largest_singular_value));
    }
    F.U = svd.matrixU();
    F.V_range = svd.matrixV().leftCols(m);
    F.Z = svd.matrixV().rightCols(n - m);
    return F;
}

/// A+ b: the minimum-norm solution of A x = b.
inline Vector apply_pseudoinverse(const FactorizedJacobian& F, const Vector& b) {
    return F.V_range * (F.U.transpose() * b).cwiseQuotient(F.singular_values);
}

/// (A+)' y = (A A')^-1 A y.
inline Vector apply_pseudoinverse_transpose(const FactorizedJacobian& F, const Vector& y) {
    return F.U * (F.V_range.transpose() * y).cwiseQuotient(F.singular_values);
}

/// Minimum-norm v with A v = -rhs; v lies in range(A').
inline Vector range_least_squares(const FactorizedJacobian& F, const Vector& rhs) {
    if (rhs.size() != F.m()) {
        throw std::invalid_argument("range_least_squares: rhs length mismatch");
    }
    return -apply_pseudoinverse(F, rhs);
}

/// Orthogonal projection onto null(A): P y = Z Z' y.
inline Vector project_null(const FactorizedJacobian& F, const Vector& y) {
    return F.Z * (F.Z.transpose() * y);
}

inline Matrix reduce_matrix(const FactorizedJacobian& F, const Matrix& M) {
    const Matrix R = F.Z.transpose() * M * F.Z;
    return 0.5 * (R + R.transpose());
}

struct ReducedEigenpair {
    double value = 0.0;
    Vector vector;  // unit, reduced coordinates
};

/// Leftmost eigenpair of Z'HZ.
inline ReducedEigenpair min_eig_reduced(const FactorizedJacobian& F, const Matrix& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(reduce_matrix(F, H));
    return {eig.eigenvalues()(0), eig.eigenvectors().col(0)};
}

}  // namespace scp
