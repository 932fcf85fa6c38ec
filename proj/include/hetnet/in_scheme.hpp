#pragma once

#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

/// Mean IN request load per macro BS, split by requesting tier.
struct InLoad {
    double l1 = 0.0;
    double l2 = 0.0;
    double total() const { return l1 + l2; }
};

/// SIIR test: does a user of the given tier, at serving distance
/// serving_distance, request nulling from a non-serving macro BS at
/// macro_distance?
bool is_potential_in(int tier, double serving_distance, double macro_distance,
                     const NetworkConfig& cfg, const InParams& params);

/// Distance interval (squared bounds) within which a macro BS receives an
/// IN request from a tier-j user at serving distance y. Below lo the macro
/// would be the stronger server; above hi the SIIR clears the threshold.
struct RequestInterval {
    double lo_sq = 0.0;
    double hi_sq = 0.0;
    bool contains_sq(double d_sq) const { return d_sq > lo_sq && d_sq < hi_sq; }
};
RequestInterval request_interval(int tier, double serving_distance,
                                 const NetworkConfig& cfg,
                                 const InParams& params);

/// Mean potential-IN user counts via the nested quadrature over the
/// serving-distance CDFs.
InLoad in_load(const NetworkConfig& cfg, const InParams& params,
               const ServingDistanceDist& y1, const ServingDistanceDist& y2,
               const QuadratureSettings& s);

/// Poisson(l_bar) p.m.f.
double k0_pmf(int k, double l_bar);

/// p.m.f. of u_IN,0 = min(U, K_0); the u = U mass is closed-form.
double u_in0_pmf(int u, int u_max, double l_bar);

/// Probability a potential IN macro-BS of the typical user selects it,
/// E[min(U/(K_0+1), 1)], with the infinite tail in closed form.
double in_probability(int u_max, double l_bar);

/// Density of the unthinned residual potential-IN macro process:
/// (1 - p_c) * lambda1.
double thinned_macro_density(const NetworkConfig& cfg, int u_max,
                             double l_bar);

/// Monte Carlo side of the protocol: per-BS requester lists and the
/// uniformly selected IN subsets.
struct InRequestState {
    // parallel to the BS list handed to run_in_protocol
    std::vector<std::vector<int>> requesters;  // user ids per BS
    std::vector<std::vector<int>> selected;    // subset, |.| = min(U, K)
    std::vector<int> u_in;                     // selected count per BS
};

/// users: (distance^2 to each BS is evaluated by the caller); here each user
/// is given by its request interval and position, each BS by its position.
struct ProtocolUser {
    double x = 0.0;
    double y = 0.0;
    RequestInterval interval;
};

InRequestState run_in_protocol(const std::vector<ProtocolUser>& users,
                               const std::vector<double>& bs_x,
                               const std::vector<double>& bs_y, int u_max,
                               Rng& rng);

}  // namespace hetnet
