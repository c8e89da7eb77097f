#include <gtest/gtest.h>

#include "support.hpp"

using namespace scp;
using scp::testing::audited_run;

TEST(ClassifyIteration, Examples) {
    EXPECT_EQ(classify_iteration(0.95, 0.1, 0.9), Classification::VerySuccessful);
    EXPECT_EQ(classify_iteration(0.5, 0.1, 0.9), Classification::Successful);
    EXPECT_EQ(classify_iteration(0.9, 0.1, 0.9), Classification::Successful);
    EXPECT_EQ(classify_iteration(0.1, 0.1, 0.9), Classification::Successful);
    EXPECT_EQ(classify_iteration(0.05, 0.1, 0.9), Classification::Unsuccessful);
}

TEST(UpdateSigma, Examples) {
    const SolverConfig config;
    EXPECT_DOUBLE_EQ(update_sigma(2.0, Classification::VerySuccessful, config), 1.0);
    EXPECT_DOUBLE_EQ(update_sigma(2.0, Classification::Successful, config), 2.0);
    EXPECT_DOUBLE_EQ(update_sigma(2.0, Classification::Unsuccessful, config), 4.0);
    EXPECT_DOUBLE_EQ(update_sigma(1.5e-8, Classification::VerySuccessful, config), 1e-8);
}

TEST(CheckStationarity, AtCircleSolution) {
    const Problem p = builtin_problem("circle_quadratic");
    const EvalPoint e = evaluate(p, p.known_solution->x);
    const auto F = factorize_jacobian(e.A);
    const Matrix H = lagrangian_hessian(e, p.known_solution->lambda);
    const auto r = check_stationarity(e, p.known_solution->lambda, F, H, 1e-6, 1e-6, 1e-6);
    EXPECT_TRUE(r.fosp);
    EXPECT_TRUE(r.sosp);
}

TEST(CheckStationarity, NegativeCurvatureFailsSecondOrderOnly) {
    EvalPoint e;
    e.g = catalog::vec({1.0, 0.0});
    e.c = Vector::Zero(1);
    e.c_l1 = 0.0;
    e.A = Matrix(catalog::vec({1.0, 0.0}).transpose());
    const auto F = factorize_jacobian(e.A);
    const Matrix H = Matrix(catalog::vec({1.0, -0.5}).asDiagonal());
    const auto r = check_stationarity(e, catalog::vec({-1.0}), F, H, 0.1, 0.1, 0.1);
    EXPECT_NEAR(r.lambda_min_red, -0.5, 1e-15);
    EXPECT_TRUE(r.fosp);
    EXPECT_FALSE(r.sosp);
}

TEST(CheckStationarity, LargeInfeasibilityFailsFirstOrder) {
    EvalPoint e;
    e.g = catalog::vec({1.0, 0.0});
    e.c = catalog::vec({5.0});
    e.c_l1 = 5.0;
    e.A = Matrix(catalog::vec({1.0, 0.0}).transpose());
    const auto F = factorize_jacobian(e.A);
    const auto r = check_stationarity(e, catalog::vec({-1.0}), F, Matrix::Identity(2, 2), 1.0, 1.0, 1.0);
    EXPECT_FALSE(r.fosp);
    EXPECT_FALSE(r.sosp);
}

TEST(Solve, LinearEqQuadraticMatchesKkt) {
    const Problem p = builtin_problem("linear_eq_quadratic");
    SolverConfig config;
    for (const Vector& x0 : {p.default_start, Vector(Vector::Zero(4)), Vector(catalog::vec({-5.0, 5.0, 2.0, -1.0}))}) {
        const SolveResult r = solve(p, x0, config);
        EXPECT_EQ(r.status, SolveStatus::ConvergedSOSP);
        EXPECT_LE(r.iterations(), 10);
        EXPECT_LE((r.x_final - p.known_solution->x).norm(), 1e-8);
    }
}

TEST(Solve, CircleQuadratic) {
    const Problem p = builtin_problem("circle_quadratic");
    const SolveResult r = solve(p, catalog::vec({0.5, 0.5}), SolverConfig{});
    EXPECT_EQ(r.status, SolveStatus::ConvergedSOSP);
    EXPECT_LE((r.x_final - catalog::vec({-1.0, 0.0})).norm(), 1e-8);
    EXPECT_NEAR(r.lambda_final(0), 0.5, 1e-8);
}

TEST(Solve, MaratosTakesACorrection) {
    const Problem p = builtin_problem("maratos");
    EXPECT_NE(evaluate(p, p.default_start).c_l1, 0.0);
    const SolveResult r = solve(p, p.default_start, SolverConfig{});
    EXPECT_EQ(r.status, SolveStatus::ConvergedSOSP);
    EXPECT_GE(r.counts.corrections, 1);
    EXPECT_TRUE(std::any_of(r.history.begin(), r.history.end(),
                            [](const IterationRecord& rec) { return rec.correction_computed; }));
}

TEST(Solve, SaddleEscapeLeavesTheSaddle) {
    const Problem p = builtin_problem("saddle_escape");
    const SolveResult r = solve(p, p.default_start, SolverConfig{});
    EXPECT_EQ(r.status, SolveStatus::ConvergedSOSP);
    EXPECT_NEAR(std::abs(r.x_final(1)), 1.0, 1e-8);
    EXPECT_NEAR(r.lambda_final(0), 1.0, 1e-8);
}

TEST(Solve, RankDeficientJacobianIsLicqFailure) {
    const Problem p = builtin_problem("circle_quadratic");
    const SolveResult r = solve(p, Vector::Zero(2), SolverConfig{});
    EXPECT_EQ(r.status, SolveStatus::LicqFailure);
    EXPECT_TRUE(r.history.empty());
}

TEST(Solve, NonFiniteTrialIsNumericalError) {
    Problem p = builtin_problem("circle_quadratic");
    p.objective = [](const Vector& x) {
        return x(0) < 0.4 ? std::numeric_limits<double>::quiet_NaN() : x(0);
    };
    const SolveResult r = solve(p, catalog::vec({0.5, 0.5}), SolverConfig{});
    EXPECT_EQ(r.status, SolveStatus::NumericalError);
}

TEST(Solve, IterationLimit) {
    const Problem p = builtin_problem("rosenbrock_sphere");
    SolverConfig config;
    config.max_iter = 2;
    const SolveResult r = solve(p, p.default_start, config);
    EXPECT_EQ(r.status, SolveStatus::MaxIterations);
    EXPECT_EQ(r.iterations(), 2);
}

TEST(Solve, FirstOrderOnlyAtIterationLimit) {
    // A huge sigma keeps the escape step from the saddle tiny.
    const Problem p = builtin_problem("saddle_escape");
    SolverConfig config;
    config.sigma0 = 1e12;
    config.max_iter = 1;
    const SolveResult r = solve(p, p.default_start, config);
    EXPECT_EQ(r.status, SolveStatus::ConvergedFOSP);
    EXPECT_TRUE(r.final_report.fosp);
    EXPECT_FALSE(r.final_report.sosp);
}

TEST(Solve, RejectsBadInput) {
    const Problem p = builtin_problem("circle_quadratic");
    SolverConfig config;
    EXPECT_THROW(solve(p, Vector::Zero(3), config), std::invalid_argument);
    config.zeta = 0.9;
    EXPECT_THROW(solve(p, p.default_start, config), ConfigError);
}

TEST(Solve, Deterministic) {
    for (const auto& name : builtin_problem_names) {
        const auto a = audited_run(std::string(name));
        const auto b = audited_run(std::string(name));
        ASSERT_EQ(a.history.size(), b.history.size());
        for (std::size_t i = 0; i < a.history.size(); ++i) {
            EXPECT_EQ(a.history[i].x, b.history[i].x);
            EXPECT_EQ(a.history[i].rho, b.history[i].rho);
            EXPECT_EQ(a.history[i].sigma, b.history[i].sigma);
        }
        EXPECT_EQ(a.x_final, b.x_final);
    }
}

TEST(SolveConfig, ValidationAndOverrides) {
    SolverConfig config;
    EXPECT_NO_THROW(config.validate());
    config.set("theta", 1.0);
    EXPECT_NO_THROW(config.validate());
    config.set("eta1", 0.95);
    EXPECT_THROW(config.validate(), ConfigError);
    EXPECT_THROW(config.set("no_such_key", 1.0), ConfigError);
    SolverConfig other;
    other.set("max_iter", 7);
    other.set("corrections_enabled", 0);
    EXPECT_EQ(other.max_iter, 7);
    EXPECT_FALSE(other.corrections_enabled);
    other.delta = 1.0 / 6.0;
    EXPECT_THROW(other.validate(), ConfigError);
}

class CatalogRun : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogRun, TerminatesAtAVerifiedSecondOrderPoint) {
    const Problem p = builtin_problem(GetParam());
    const SolveResult r = audited_run(GetParam());
    ASSERT_EQ(r.status, SolveStatus::ConvergedSOSP) << r.message;
    const EvalPoint e = evaluate(p, r.x_final);
    const Matrix A = e.A;
    const Vector lambda = -(A * A.transpose()).ldlt().solve(A * e.g);
    EXPECT_LE((e.g + A.transpose() * lambda).norm(), 1e-8);
    EXPECT_LE(e.c_l1, 1e-8);
    const Matrix Z = scp::testing::qr_null_basis(A);
    EXPECT_GE(scp::testing::smallest_eigenvalue(Z.transpose() * lagrangian_hessian(e, lambda) * Z), -1e-8);
}

TEST_P(CatalogRun, RecordInvariants) {
    const Problem p = builtin_problem(GetParam());
    const SolverConfig config;
    const SolveResult r = audited_run(GetParam());
    double mu = 0.0;
    for (std::size_t i = 0; i < r.history.size(); ++i) {
        const IterationRecord& rec = r.history[i];
        EXPECT_EQ(rec.k, static_cast<int>(i));
        EXPECT_EQ(rec.accepted, rec.classification != Classification::Unsuccessful);
        EXPECT_EQ(rec.rho_corr.has_value(), rec.correction_computed);
        EXPECT_EQ(rec.norm_w == 0.0, !rec.correction_computed || rec.context.w.isZero(0.0));
        EXPECT_GE(rec.mu, mu);
        mu = rec.mu;
        if (rec.accepted) {
            const EvalPoint here = evaluate(p, rec.x);
            const EvalPoint next = evaluate(p, rec.context.x_next);
            const double before = merit_value(here, rec.mu);
            EXPECT_LE(merit_value(next, rec.mu), before + 1e-12 * std::max(1.0, std::abs(before)));
        } else {
            EXPECT_EQ(rec.context.x_next, rec.x);
            EXPECT_GE(rec.context.sigma_next, config.gamma1 * rec.sigma);
        }
        if (i + 1 < r.history.size()) {
            EXPECT_EQ(r.history[i + 1].x, rec.context.x_next);
            EXPECT_EQ(r.history[i + 1].sigma, rec.context.sigma_next);
        }
        const auto F = factorize_jacobian(rec.context.A);
        EXPECT_LE(rec.norm_vc, rec.c_l1 / F.smallest_singular_value * (1.0 + 1e-12));
        EXPECT_TRUE(rec.violations.empty()) << rec.violations.front().check;
    }
    ASSERT_GE(r.history.size(), 2u);
    EXPECT_EQ(r.history.back().mu, r.history[r.history.size() - 2].mu);
    EXPECT_EQ(r.counts.successful + r.counts.unsuccessful, r.iterations());
}

INSTANTIATE_TEST_SUITE_P(AllProblems, CatalogRun,
                         ::testing::Values("circle_quadratic", "linear_eq_quadratic", "maratos",
                                           "rosenbrock_sphere", "saddle_escape"));

TEST(Solve, StepTimesRootSigmaBoundedAcrossTolerances) {
    const Problem p = builtin_problem("rosenbrock_sphere");
    std::vector<double> constants;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-8}) {
        SolverConfig config;
        config.set_tolerance(eps);
        const SolveResult r = solve(p, p.default_start, config);
        double c = 0.0;
        for (const auto& rec : r.history) c = std::max(c, rec.norm_d * std::sqrt(rec.sigma));
        ASSERT_TRUE(std::isfinite(c));
        constants.push_back(c);
    }
    const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
    EXPECT_LE(*hi, 2.0 * *lo);
}
