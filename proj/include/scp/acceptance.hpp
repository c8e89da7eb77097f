#pragma once

#include <algorithm>

#include "scp/config.hpp"
#include "scp/record.hpp"

namespace scp {

inline Classification classify_iteration(double rho, double eta1, double eta2) {
    if (rho > eta2) return Classification::VerySuccessful;
    if (rho >= eta1) return Classification::Successful;
    return Classification::Unsuccessful;
}

/// Deterministic endpoint of the admissible sigma interval for each class.
inline double update_sigma(double sigma, Classification cls, const SolverConfig& config) {
    switch (cls) {
        case Classification::VerySuccessful: return std::max(config.sigma_min, config.gamma3 * sigma);
        case Classification::Successful: return sigma;
        case Classification::Unsuccessful: return config.gamma1 * sigma;
    }
    return sigma;
}

}  // namespace scp
