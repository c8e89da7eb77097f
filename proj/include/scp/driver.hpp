#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "scp/acceptance.hpp"
#include "scp/config.hpp"
#include "scp/correction.hpp"
#include "scp/diagnostics.hpp"
#include "scp/linalg.hpp"
#include "scp/merit.hpp"
#include "scp/multipliers.hpp"
#include "scp/normal_step.hpp"
#include "scp/problem.hpp"
#include "scp/record.hpp"
#include "scp/tangential.hpp"

namespace scp {

enum class SolveStatus { ConvergedSOSP, ConvergedFOSP, MaxIterations, LicqFailure, NumericalError };

inline std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::ConvergedSOSP: return "ConvergedSOSP";
        case SolveStatus::ConvergedFOSP: return "ConvergedFOSP";
        case SolveStatus::MaxIterations: return "MaxIterations";
        case SolveStatus::LicqFailure: return "LicqFailure";
        case SolveStatus::NumericalError: return "NumericalError";
    }
    return "NumericalError";
}

struct StationarityReport {
    double grad_lagrangian_norm = 0.0;
    double c_l1 = 0.0;
    double lambda_min_red = 0.0;
    bool fosp = false;
    bool sosp = false;
};

struct SolveCounts {
    int successful = 0;
    int unsuccessful = 0;
    int corrections = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::NumericalError;
    Vector x_final;
    Vector lambda_final;
    std::vector<IterationRecord> history;
    SolveCounts counts;
    StationarityReport final_report;
    int audit_violations = 0;
    std::string message;

    int iterations() const { return static_cast<int>(history.size()); }

    /// Largest sigma used over the run (0 when no iteration ran).
    double max_sigma() const {
        double s = 0.0;
        for (const auto& rec : history) s = std::max(s, rec.sigma);
        return s;
    }

    /// Penalty parameter of the last iteration.
    double final_mu() const { return history.empty() ? 0.0 : history.back().mu; }
};

/// Measures the approximate FOSP / SOSP conditions at x with multipliers lambda.
inline StationarityReport check_stationarity(const EvalPoint& eval, const Vector& lambda,
                                             const FactorizedJacobian& F, const Matrix& H,
                                             double eps_g, double eps_c, double eps_h) {
    StationarityReport r;
    r.grad_lagrangian_norm = (eval.g + eval.A.transpose() * lambda).norm();
    r.c_l1 = eval.c_l1;
    r.lambda_min_red = min_eig_reduced(F, H).value;
    r.fosp = r.grad_lagrangian_norm <= eps_g && r.c_l1 <= eps_c;
    r.sosp = r.fosp && r.lambda_min_red >= -eps_h;
    return r;
}

/**
 * Sequential cubic programming outer loop.
 *
 * Each iteration: factorize A_k, take the range-space step v = beta v_c,
 * estimate least-squares multipliers, minimize the reduced cubic model for
 * the null-space step u, update the merit parameter, and test the trial
 * point x + d by the merit ratio. A failed trial inside the near-feasible
 * region gets one second-order correction attempt. sigma follows the
 * classification of the ratio that decided acceptance.
 */
class SolverRun {
public:
    SolverRun(const Problem& problem, SolverConfig config)
        : problem_(problem), config_(std::move(config)) {}

    SolveResult run(const Vector& x0) {
        config_.validate();
        problem_.validate();
        if (x0.size() != problem_.n) {
            throw std::invalid_argument("solve: x0 has wrong length");
        }
        result_ = SolveResult{};
        try {
            iterate(x0);
        } catch (const RankDeficient& e) {
            finish(SolveStatus::LicqFailure, e.what());
        } catch (const NonFiniteValue& e) {
            finish(SolveStatus::NumericalError, e.what());
        } catch (const NonpositivePredictedReduction& e) {
            finish(SolveStatus::NumericalError, e.what());
        } catch (const SecularSolveFailed& e) {
            finish(SolveStatus::NumericalError, e.what());
        } catch (const ResidualConditionUnmet& e) {
            finish(SolveStatus::NumericalError, e.what());
        }
        return std::move(result_);
    }

private:
    void finish(SolveStatus status, std::string message) {
        result_.status = status;
        result_.message = std::move(message);
        if (result_.x_final.size() == 0) {
            result_.x_final = current_.x;
        }
    }

    void iterate(const Vector& x0) {
        current_ = evaluate(problem_, x0);
        double sigma = config_.sigma0;
        MeritState merit{config_.mu_init, config_.mu_init, 0.0};

        for (int k = 0;; ++k) {
            const EvalPoint& cur = current_;
            const FactorizedJacobian F = factorize_jacobian(cur.A, config_.rank_tol);

            const NormalSolve ns = compute_vc(F, cur.c, config_.r_v);
            const double norm_vc = ns.v_c.norm();
            const double beta = cur.c_l1 == 0.0 ? 1.0 : select_beta(norm_vc, sigma, config_.theta);
            const NormalStep normal = assemble_normal(ns.v_c, ns.residual_l1, beta);

            const Vector lambda =
                estimate_multipliers(F, cur.g, config_.r_lambda, normal.v.norm());
            const Matrix H = lagrangian_hessian(cur, lambda);
            const StationarityReport report = check_stationarity(
                cur, lambda, F, H, config_.eps_g, config_.eps_c, config_.eps_h);

            result_.x_final = cur.x;
            result_.lambda_final = lambda;
            result_.final_report = report;
            if (report.sosp) {
                finish(SolveStatus::ConvergedSOSP, "second-order stationary point reached");
                return;
            }
            if (k >= config_.max_iter) {
                finish(report.fosp ? SolveStatus::ConvergedFOSP : SolveStatus::MaxIterations,
                       "iteration limit reached");
                return;
            }

            const ReducedCubicModel model = build_reduced_model(cur, F, H, normal.v, sigma);
            const OracleSolution tangential = solve_cubic(model, config_.delta);
            const Vector d = normal.v + tangential.u;

            merit = update_mu(merit,
                              mu_candidate(cur.g, H, normal.v, d, tangential.u, sigma, normal.beta,
                                           cur.c_l1, config_.r_v, config_.tau),
                              config_.nu);
            const double mu = merit.mu;
            const double delta_q = predicted_reduction(cur, H, d, sigma, mu);
            if (!(delta_q > 0.0)) {
                throw NonpositivePredictedReduction(
                    "predicted reduction " + std::to_string(delta_q) +
                    " at a point that is not second-order stationary");
            }

            EvalPoint trial = evaluate(problem_, cur.x + d);
            const double phi_x = merit_value(cur, mu);
            const double phi_trial = merit_value(trial, mu);
            const double rho = guarded_ratio(phi_x, phi_trial, delta_q);

            IterationRecord rec;
            rec.context.c_trial = trial.c;
            rec.context.phi_trial = phi_trial;

            std::optional<EvalPoint> next;
            if (rho >= config_.eta1) {
                next = std::move(trial);
            } else if (config_.corrections_enabled &&
                       in_correction_region(norm_vc, sigma, config_.zeta)) {
                const Vector w = compute_correction(F, trial.c, config_.r_w, d.norm());
                EvalPoint corrected = evaluate(problem_, cur.x + d + w);
                const double phi_corr = merit_value(corrected, mu);
                rec.rho_corr = guarded_ratio(phi_x, phi_corr, delta_q);
                rec.correction_computed = true;
                rec.norm_w = w.norm();
                rec.context.w = w;
                rec.context.phi_corr = phi_corr;
                if (*rec.rho_corr >= config_.eta1) {
                    next = std::move(corrected);
                }
            }

            rec.k = k;
            rec.x = cur.x;
            rec.f = cur.f;
            rec.c_l1 = cur.c_l1;
            rec.grad_lagrangian_norm = report.grad_lagrangian_norm;
            rec.lambda_min_red = report.lambda_min_red;
            rec.sigma = sigma;
            rec.mu = mu;
            rec.beta = normal.beta;
            rec.norm_vc = norm_vc;
            rec.norm_v = normal.v.norm();
            rec.norm_u = tangential.u.norm();
            rec.norm_d = d.norm();
            rec.delta_q = delta_q;
            rec.delta_m_u = tangential.delta_m;
            rec.rho = rho;
            rec.classification = classify_iteration(rec.effective_rho(), config_.eta1, config_.eta2);
            rec.accepted = next.has_value();

            auto& ctx = rec.context;
            ctx.g = cur.g;
            ctx.c = cur.c;
            ctx.A = cur.A;
            ctx.Z = F.Z;
            ctx.H = H;
            ctx.lambda = lambda;
            ctx.v_c = normal.v_c;
            ctx.v = normal.v;
            ctx.u = tangential.u;
            ctx.residual_l1 = normal.residual_l1;
            ctx.mu_prev = merit.mu_prev;
            ctx.mu_candidate = merit.mu_candidate;
            ctx.sigma_next = update_sigma(sigma, rec.classification, config_);
            ctx.phi_x = phi_x;
            ctx.x_next = next ? next->x : cur.x;

            if (rec.accepted) {
                ++result_.counts.successful;
            } else {
                ++result_.counts.unsuccessful;
            }
            if (rec.correction_computed) {
                ++result_.counts.corrections;
            }
            if (config_.audit) {
                rec.violations = audit_iteration(rec, config_);
                result_.audit_violations += static_cast<int>(rec.violations.size());
                if (auto warning = merit_model_gap_warning(problem_, rec)) {
                    rec.warnings.push_back(*warning);
                }
            }

            sigma = ctx.sigma_next;
            result_.history.push_back(std::move(rec));
            if (next) {
                current_ = std::move(*next);
            }
        }
    }

    const Problem& problem_;
    SolverConfig config_;
    EvalPoint current_;
    SolveResult result_;
};

inline SolveResult solve(const Problem& problem, const Vector& x0, const SolverConfig& config) {
    return SolverRun(problem, config).run(x0);
}

}  // namespace scp
