#pragma once

#include <vector>

#include "hetnet/config.hpp"

namespace hetnet {

/// Small-beta outage expansion 1 - S ~ b * beta^d.
struct AsymptoticResult {
    int d = 0;
    double b1 = 0.0;
    double b2 = 0.0;
    double b = 0.0;
    std::vector<int> u_star_d;  // argmax set of the order gain
    int u_star = 0;             // winner of the coefficient comparison
    double value = 0.0;         // b * beta^d at the requested beta
};

/// Order gain d(u) = min(n1 - u, n2).
int order_gain(int u, const NetworkConfig& cfg);

/// Asymptotic outage coefficient b_j of the tier-j expansion.
double coefficient_b(int tier, const NetworkConfig& cfg,
                     const InParams& params, const QuadratureSettings& s);

/// Full small-beta expansion evaluated at the given beta.
AsymptoticResult asymptotic_outage(double beta, const NetworkConfig& cfg,
                                   const InParams& params,
                                   const QuadratureSettings& s);

/// All U maximizing the order gain: {0, ..., n1 - n2}.
std::vector<int> optimal_u_order(const NetworkConfig& cfg);

/// The U minimizing the asymptotic outage for given thresholds; also
/// reports the two compared coefficients.
struct OptimalU {
    int u_star = 0;
    double coeff_below = 0.0;  // b2(n1-n2-1)
    double coeff_at = 0.0;     // b1(n1-n2) + b2(n1-n2)
};
OptimalU optimal_u_asymptotic(const NetworkConfig& cfg, double t1, double t2,
                              const QuadratureSettings& s);

}  // namespace hetnet
