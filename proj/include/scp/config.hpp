#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scp/errors.hpp"

namespace scp {

/// User constants of the SCP outer loop. Call validate() after editing.
struct SolverConfig {
    double eta1 = 0.1;
    double eta2 = 0.9;
    double nu = 2.0;
    double tau = 0.5;
    double theta = 0.5;
    double zeta = 0.25;
    double gamma1 = 2.0;
    double gamma2 = 5.0;
    double gamma3 = 0.5;
    double delta = 0.1;
    double r_v = 0.0;
    double r_lambda = 0.0;
    double r_w = 0.0;
    double sigma0 = 1.0;
    double sigma_min = 1e-8;
    double mu_init = 1.0;
    double eps_g = 1e-8;
    double eps_c = 1e-8;
    double eps_h = 1e-8;
    int max_iter = 1000;
    double rank_tol = 1e-10;
    bool audit = false;
    bool corrections_enabled = true;

    void set_tolerance(double eps) { eps_g = eps_c = eps_h = eps; }

    void validate() const {
        auto require = [](bool ok, const char* what) {
            if (!ok) {
                throw ConfigError(std::string("invalid solver configuration: ") + what);
            }
        };
        require(0.0 < eta1 && eta1 < eta2 && eta2 < 1.0, "need 0 < eta1 < eta2 < 1");
        require(nu > 1.0, "need nu > 1");
        require(0.0 < tau && tau < 1.0, "need tau in (0,1)");
        require(0.0 < theta && theta <= 1.0, "need theta in (0,1]");
        require(0.0 < zeta && zeta < theta, "need zeta in (0,theta)");
        require(1.0 < gamma1 && gamma1 < gamma2, "need 1 < gamma1 < gamma2");
        require(0.0 < gamma3 && gamma3 <= 1.0, "need gamma3 in (0,1]");
        require(0.0 < delta && delta < 1.0 / 6.0, "need delta in (0,1/6)");
        require(0.0 <= r_v && r_v < 1.0 - tau, "need r_v in [0,1-tau)");
        require(r_lambda >= 0.0, "need r_lambda >= 0");
        require(r_w >= 0.0, "need r_w >= 0");
        require(sigma_min > 0.0 && sigma0 >= sigma_min, "need sigma0 >= sigma_min > 0");
        require(mu_init > 0.0, "need mu_init > 0");
        require(eps_g > 0.0 && eps_c > 0.0 && eps_h > 0.0, "tolerances must be positive");
        require(max_iter > 0, "need max_iter > 0");
        require(rank_tol > 0.0, "need rank_tol > 0");
        for (double value : {eta1, eta2, nu, tau, theta, zeta, gamma1, gamma2, gamma3, delta, r_v,
                             r_lambda, r_w, sigma0, sigma_min, mu_init, eps_g, eps_c, eps_h,
                             rank_tol}) {
            require(std::isfinite(value), "non-finite constant");
        }
    }

    /// Named access to the numeric constants, for overrides and serialization.
    std::vector<std::pair<std::string_view, double*>> numeric_fields() {
        return {{"eta1", &eta1},         {"eta2", &eta2},           {"nu", &nu},
                {"tau", &tau},           {"theta", &theta},         {"zeta", &zeta},
                {"gamma1", &gamma1},     {"gamma2", &gamma2},       {"gamma3", &gamma3},
                {"delta", &delta},       {"r_v", &r_v},             {"r_lambda", &r_lambda},
                {"r_w", &r_w},           {"sigma0", &sigma0},       {"sigma_min", &sigma_min},
                {"mu_init", &mu_init},   {"eps_g", &eps_g},         {"eps_c", &eps_c},
                {"eps_h", &eps_h},       {"rank_tol", &rank_tol}};
    }

    /// Applies a "key=value" style override; unknown keys are a ConfigError.
    void set(std::string_view key, double value) {
        for (auto& [name, field] : numeric_fields()) {
            if (name == key) {
                *field = value;
                return;
            }
        }
        if (key == "max_iter") {
            max_iter = static_cast<int>(value);
        } else if (key == "audit") {
            audit = value != 0.0;
        } else if (key == "corrections_enabled") {
            corrections_enabled = value != 0.0;
        } else {
            throw ConfigError("unknown configuration key '" + std::string(key) + "'");
        }
    }
};

}  // namespace scp
