#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scp/acceptance.hpp"
#include "scp/config.hpp"
#include "scp/correction.hpp"
#include "scp/merit.hpp"
#include "scp/normal_step.hpp"
#include "scp/record.hpp"
#include "scp/tangential.hpp"

namespace scp {

inline constexpr double kAuditTolerance = 1e-9;

namespace detail {

class Auditor {
public:
    explicit Auditor(std::vector<Violation>& out) : out_(out) {}

    void at_most(const char* check, double lhs, double rhs, double scale) {
        if (!(lhs <= rhs + kAuditTolerance * std::max(1.0, scale))) {
            report(check, lhs, "<=", rhs);
        }
    }

    void at_least(const char* check, double lhs, double rhs, double scale) {
        if (!(lhs >= rhs - kAuditTolerance * std::max(1.0, scale))) {
            report(check, lhs, ">=", rhs);
        }
    }

    void require(const char* check, bool ok, const std::string& detail) {
        if (!ok) {
            out_.push_back({check, detail});
        }
    }

private:
    void report(const char* check, double lhs, const char* op, double rhs) {
        std::ostringstream os;
        os.precision(17);
        os << "expected " << lhs << ' ' << op << ' ' << rhs;
        out_.push_back({check, os.str()});
    }

    std::vector<Violation>& out_;
};

}  // namespace detail

/**
 * Re-derives every per-iteration guarantee of the method from the raw data in
 * the record and returns the checks that fail. Scalars that the solver
 * derived (model decreases, predicted reduction) are recomputed here rather
 * than trusted.
 *
 * Checks: normal_residual, beta_interval, multiplier_residual,
 * correction_residual, correction_region, cauchy_decrease,
 * oracle_gradient_residual, oracle_curvature, merit_model_decrease,
 * tangential_decrease_bound, tangential_step_bound, cubic_step_decrease,
 * null_space_membership, range_space_membership, sigma_update.
 */
inline std::vector<Violation> audit_iteration(const IterationRecord& rec,
                                              const SolverConfig& config) {
    std::vector<Violation> out;
    detail::Auditor audit(out);
    const IterationContext& ctx = rec.context;
    const double sigma = rec.sigma;
    const double norm_A = ctx.A.norm();
    const double c_l1 = ctx.c.lpNorm<1>();
    const double norm_vc = ctx.v_c.norm();

    // Normal step.
    audit.at_most("normal_residual", (ctx.A * ctx.v_c + ctx.c).lpNorm<1>(),
                  config.r_v * std::min(c_l1, norm_vc * norm_vc * norm_vc),
                  c_l1 + norm_A * ctx.v_c.lpNorm<1>());
    if (c_l1 > 0.0 && norm_vc > 0.0) {
        const auto [lo, hi] = beta_interval(norm_vc, sigma, config.theta);
        audit.at_least("beta_interval", rec.beta, lo, 1.0);
        audit.at_most("beta_interval", rec.beta, hi, 1.0);
    } else {
        audit.require("beta_interval", rec.beta == 1.0, "beta must be 1 at a feasible point");
    }
    audit.at_most("beta_interval", (ctx.v - rec.beta * ctx.v_c).norm(), 0.0, ctx.v.norm());
    audit.at_most("beta_interval", ctx.v.norm(), 1.0 / std::sqrt(sigma), 1.0);

    // Multipliers.
    audit.at_most("multiplier_residual",
                  (ctx.A * (ctx.g + ctx.A.transpose() * ctx.lambda)).norm(),
                  config.r_lambda * ctx.v.norm(), norm_A * ctx.g.norm());

    // Subspace memberships.
    audit.at_most("null_space_membership", (ctx.A * ctx.u).norm(), 0.0, norm_A * ctx.u.norm());
    audit.at_most("range_space_membership", (ctx.Z * (ctx.Z.transpose() * ctx.v_c)).norm(), 0.0,
                  norm_vc);
    if (rec.correction_computed) {
        audit.at_most("range_space_membership", (ctx.Z * (ctx.Z.transpose() * ctx.w)).norm(), 0.0,
                      ctx.w.norm());
    }

    // Tangential oracle.
    ReducedCubicModel model;
    model.g_red = ctx.Z.transpose() * (ctx.g + ctx.H * ctx.v);
    model.H_red = ctx.Z.transpose() * ctx.H * ctx.Z;
    model.H_red = 0.5 * (model.H_red + model.H_red.transpose()).eval();
    model.sigma = sigma;
    model.Z = ctx.Z;
    const Vector p = ctx.Z.transpose() * ctx.u;
    const double np = p.norm();
    const double nu_ = ctx.u.norm();
    const double dm = model_decrease(model, p);
    const double cauchy = cauchy_point(model).delta_m;
    const double gr = model.g_red.norm();
    const double norm_Hred = model.H_red.norm();
    const double norm_H = ctx.H.operatorNorm();
    const double lam_min_red =
        Eigen::SelfAdjointEigenSolver<Matrix>(model.H_red, Eigen::EigenvaluesOnly).eigenvalues()(0);

    audit.at_least("cauchy_decrease", dm, cauchy, std::max(std::abs(dm), std::abs(cauchy)));
    audit.at_most("oracle_gradient_residual", model_gradient(model, p).norm(),
                  config.delta * sigma * np * np, gr + norm_Hred * np + sigma * np * np);
    audit.at_least("oracle_curvature", std::min(lam_min_red, 0.0), -sigma * np, norm_Hred);
    audit.at_least("tangential_decrease_bound", dm,
                   0.3 * gr * std::min(gr / (1.0 + norm_H), std::sqrt(gr / sigma)), std::abs(dm));
    audit.at_most("tangential_step_bound", nu_,
                  3.0 * std::max(norm_H / sigma, std::sqrt(gr / sigma)), nu_);
    audit.at_least("cubic_step_decrease", dm,
                   (1.0 / 6.0 - config.delta) * sigma * nu_ * nu_ * nu_, std::abs(dm));

    // Merit model decrease.
    EvalPoint at_x;
    at_x.g = ctx.g;
    at_x.c = ctx.c;
    at_x.c_l1 = c_l1;
    at_x.A = ctx.A;
    const Vector d = ctx.v + ctx.u;
    const double dq = predicted_reduction(at_x, ctx.H, d, sigma, rec.mu);
    audit.at_least("merit_model_decrease", dq, dm + config.tau * rec.mu * rec.beta * c_l1,
                   std::abs(dq));

    // Second-order correction.
    if (rec.correction_computed) {
        const double nd = d.norm();
        audit.at_most("correction_residual", (ctx.A * ctx.w + ctx.c_trial).norm(),
                      config.r_w * nd * nd * nd, ctx.c_trial.norm() + norm_A * ctx.w.norm());
        audit.require("correction_region",
                      in_correction_region(norm_vc, sigma, config.zeta) && rec.beta == 1.0,
                      "correction outside the near-feasible region or with beta < 1");
    }

    // Acceptance and sigma update.
    const double rho = rec.effective_rho();
    const Classification expected = classify_iteration(rho, config.eta1, config.eta2);
    audit.require("sigma_update", expected == rec.classification,
                  "classification " + std::string(to_string(rec.classification)) +
                      " does not match ratio " + std::to_string(rho));
    const double next = ctx.sigma_next;
    switch (rec.classification) {
        case Classification::VerySuccessful:
            audit.at_least("sigma_update", next, std::max(config.sigma_min, config.gamma3 * sigma),
                           next);
            audit.at_most("sigma_update", next, sigma, next);
            break;
        case Classification::Successful:
            audit.at_most("sigma_update", std::abs(next - sigma), 0.0, sigma);
            break;
        case Classification::Unsuccessful:
            audit.at_least("sigma_update", next, config.gamma1 * sigma, next);
            audit.at_most("sigma_update", next, config.gamma2 * sigma, next);
            break;
    }
    return out;
}

/**
 * Soft check of the gap between predicted and actual merit reduction on an
 * accepted step without correction, against a quadratic bound built from
 * local Lipschitz estimates of g and A along d. Returns a message when the
 * bound is exceeded. Informational only.
 */
inline std::optional<std::string> merit_model_gap_warning(const Problem& problem,
                                                          const IterationRecord& rec) {
    if (!rec.accepted || rec.correction_computed || rec.norm_d == 0.0) {
        return std::nullopt;
    }
    const IterationContext& ctx = rec.context;
    const Vector d = ctx.v + ctx.u;
    const double nd = d.norm();
    const Vector x_trial = rec.x + d;
    const double lip_g = (problem.gradient(x_trial) - ctx.g).norm() / nd;
    const double lip_A = (problem.jacobian(x_trial) - ctx.A).norm() / nd;
    const double bound = 0.5 * (lip_g + ctx.H.operatorNorm() + rec.mu * lip_A) * nd * nd;
    const double gap = rec.delta_q - (ctx.phi_x - ctx.phi_trial);
    if (gap > bound + kAuditTolerance * std::max(1.0, std::abs(rec.delta_q))) {
        std::ostringstream os;
        os.precision(6);
        os << "merit model gap " << gap << " exceeds local quadratic bound " << bound;
        return os.str();
    }
    return std::nullopt;
}

/// Worst relative errors of the analytic derivatives against central differences.
struct FiniteDifferenceReport {
    double gradient = 0.0;
    double objective_hessian = 0.0;
    double jacobian = 0.0;
    double constraint_hessians = 0.0;

    double max() const {
        return std::max({gradient, objective_hessian, jacobian, constraint_hessians});
    }
};

inline FiniteDifferenceReport finite_difference_check(const Problem& problem, const Vector& x,
                                                      double h = 1e-6) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite_difference_check: step must be positive");
    }
    const Index n = problem.n;
    const Index m = problem.m;
    auto rel = [](const auto& analytic, const auto& approx) {
        return (analytic - approx).cwiseAbs().maxCoeff() /
               std::max(1.0, analytic.cwiseAbs().maxCoeff());
    };

    Vector fd_g(n);
    Matrix fd_fh(n, n);
    Matrix fd_A(m, n);
    std::vector<Matrix> fd_ch(static_cast<std::size_t>(m), Matrix(n, n));
    for (Index j = 0; j < n; ++j) {
        Vector xp = x;
        Vector xm = x;
        xp(j) += h;
        xm(j) -= h;
        fd_g(j) = (problem.objective(xp) - problem.objective(xm)) / (2.0 * h);
        fd_fh.col(j) = (problem.gradient(xp) - problem.gradient(xm)) / (2.0 * h);
        fd_A.col(j) = (problem.constraints(xp) - problem.constraints(xm)) / (2.0 * h);
        const Matrix Ap = problem.jacobian(xp);
        const Matrix Am = problem.jacobian(xm);
        for (Index i = 0; i < m; ++i) {
            fd_ch[static_cast<std::size_t>(i)].col(j) =
                (Ap.row(i) - Am.row(i)).transpose() / (2.0 * h);
        }
    }

    FiniteDifferenceReport report;
    report.gradient = rel(problem.gradient(x), fd_g);
    report.objective_hessian = rel(problem.objective_hessian(x), fd_fh);
    report.jacobian = rel(problem.jacobian(x), fd_A);
    const auto ch = problem.constraint_hessians(x);
    for (Index i = 0; i < m; ++i) {
        report.constraint_hessians = std::max(
            report.constraint_hessians,
            rel(ch[static_cast<std::size_t>(i)], fd_ch[static_cast<std::size_t>(i)]));
    }
    return report;
}

struct RateReport {
    std::vector<double> errors;            // |x_k - x*| over accepted iterates
    std::vector<double> quadratic_ratios;  // e_{k+1} / e_k^2, last three steps
    std::vector<double> linear_ratios;     // e_{k+1} / e_k, last three steps
    double constant = 0.0;                 // max of quadratic_ratios
    bool certified = false;
};

/**
 * Local rate over the accepted iterates of a run. Quadratic convergence is
 * certified when the last three linear ratios decrease strictly and end below
 * 0.1; the fitted constant is reported either way.
 */
inline RateReport convergence_rate(const std::vector<IterationRecord>& history,
                                   const Vector& x_star) {
    RateReport report;
    if (!history.empty()) {
        report.errors.push_back((history.front().x - x_star).norm());
    }
    for (const auto& rec : history) {
        if (rec.accepted) {
            report.errors.push_back((rec.context.x_next - x_star).norm());
        }
    }
    // An exact hit ends the sequence.
    const auto zero = std::find(report.errors.begin(), report.errors.end(), 0.0);
    if (zero != report.errors.end()) {
        report.errors.erase(zero + 1, report.errors.end());
    }
    if (report.errors.size() < 4) {
        throw InsufficientHistory("convergence_rate: need at least 4 accepted iterates, have " +
                                  std::to_string(report.errors.size()));
    }
    const std::size_t last = report.errors.size() - 1;
    for (std::size_t i = last - 3; i < last; ++i) {
        const double e0 = report.errors[i];
        const double e1 = report.errors[i + 1];
        report.quadratic_ratios.push_back(e1 / (e0 * e0));
        report.linear_ratios.push_back(e1 / e0);
    }
    report.constant =
        *std::max_element(report.quadratic_ratios.begin(), report.quadratic_ratios.end());
    const auto& lr = report.linear_ratios;
    report.certified = std::isfinite(report.constant) && lr[1] < lr[0] && lr[2] < lr[1] &&
                       lr[2] < 0.1;
    return report;
}

}  // namespace scp
