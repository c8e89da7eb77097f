#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scp/problem.hpp"

namespace scp {

enum class Classification { VerySuccessful, Successful, Unsuccessful };

inline std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::VerySuccessful: return "VerySuccessful";
        case Classification::Successful: return "Successful";
        case Classification::Unsuccessful: return "Unsuccessful";
    }
    return "Unsuccessful";
}

inline std::optional<Classification> parse_classification(std::string_view s) {
    if (s == "VerySuccessful") return Classification::VerySuccessful;
    if (s == "Successful") return Classification::Successful;
    if (s == "Unsuccessful") return Classification::Unsuccessful;
    return std::nullopt;
}

/// One failed audit check.
struct Violation {
    std::string check;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

/// Raw per-iteration vectors and matrices, enough to re-audit an iteration offline.
struct IterationContext {
    Vector g;
    Vector c;
    Matrix A;
    Matrix Z;
    Matrix H;
    Vector lambda;
    Vector v_c;
    Vector v;
    Vector u;
    Vector w;        // empty unless a correction was computed
    Vector c_trial;  // c(x + d)
    double residual_l1 = 0.0;
    double mu_prev = 0.0;
    double mu_candidate = 0.0;
    double sigma_next = 0.0;
    double phi_x = 0.0;
    double phi_trial = 0.0;
    std::optional<double> phi_corr;
    Vector x_next;
};

struct IterationRecord {
    int k = 0;
    Vector x;
    double f = 0.0;
    double c_l1 = 0.0;
    double grad_lagrangian_norm = 0.0;
    double lambda_min_red = 0.0;
    double sigma = 0.0;
    double mu = 0.0;
    double beta = 1.0;
    double norm_vc = 0.0;
    double norm_v = 0.0;
    double norm_u = 0.0;
    double norm_d = 0.0;
    double norm_w = 0.0;
    double delta_q = 0.0;
    double delta_m_u = 0.0;
    double rho = 0.0;
    std::optional<double> rho_corr;
    Classification classification = Classification::Unsuccessful;
    bool correction_computed = false;
    bool accepted = false;

    IterationContext context;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    /// The ratio that drives classification: rho_corr when a correction was tried.
    double effective_rho() const { return rho_corr.value_or(rho); }
};

}  // namespace scp
