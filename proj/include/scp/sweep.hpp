#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "scp/driver.hpp"

namespace scp {

struct SweepRow {
    double eps = 0.0;
    SolveStatus status = SolveStatus::NumericalError;
    int successful = 0;
    int total = 0;
    double max_sigma = 0.0;
    double final_mu = 0.0;
};

/// Solves the same problem from the same start once per tolerance (eps_g = eps_c = eps_h = eps).
inline std::vector<SweepRow> run_sweep(const Problem& problem, const Vector& x0,
                                       const SolverConfig& base, const std::vector<double>& eps) {
    std::vector<SweepRow> rows;
    rows.reserve(eps.size());
    for (double e : eps) {
        SolverConfig config = base;
        config.set_tolerance(e);
        const SolveResult result = solve(problem, x0, config);
        rows.push_back({e, result.status, result.counts.successful, result.iterations(),
                        result.max_sigma(), result.final_mu()});
    }
    return rows;
}

/**
 * Least-squares slope s of log K against log(1/eps), i.e. K ~ eps^-s, over the
 * successful-iteration counts. Absent with fewer than two distinct tolerances.
 */
inline std::optional<double> loglog_slope(const std::vector<SweepRow>& rows) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : rows) {
        xs.push_back(-std::log(row.eps));
        ys.push_back(std::log(std::max(row.successful, 1)));
    }
    if (xs.size() < 2) return std::nullopt;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

}  // namespace scp
