#include "hetnet/in_scheme.hpp"

#include <algorithm>
#include <cmath>

#include "hetnet/specfun.hpp"

namespace hetnet {

bool is_potential_in(int tier, double serving_distance, double macro_distance,
                     const NetworkConfig& cfg, const InParams& params) {
    // SIIR = P_j Y^-alpha_j / (P_1 D^-alpha_1) < T_j, in log domain
    const double log_siir =
        std::log(cfg.power(tier)) - cfg.pathloss_exp(tier) * std::log(serving_distance) -
        std::log(cfg.p1) + cfg.alpha1 * std::log(macro_distance);
    return log_siir < std::log(params.threshold(tier));
}

RequestInterval request_interval(int tier, double serving_distance,
                                 const NetworkConfig& cfg,
                                 const InParams& params) {
    const double aj = cfg.pathloss_exp(tier);
    const double lo = std::pow(cfg.p1 / cfg.power(tier), 1.0 / cfg.alpha1) *
                      std::pow(serving_distance, aj / cfg.alpha1);
    const double hi = lo * std::pow(params.threshold(tier), 1.0 / cfg.alpha1);
    return {lo * lo, hi * hi};
}

InLoad in_load(const NetworkConfig& cfg, const InParams& params,
               const ServingDistanceDist& y1, const ServingDistanceDist& y2,
               const QuadratureSettings& s) {
    InLoad load;
    for (int j : {1, 2}) {
        const ServingDistanceDist& yj = (j == 1) ? y1 : y2;
        const double tj = params.threshold(j);
        if (tj <= 1.0) continue;  // integration limits coincide
        const double aj = cfg.pathloss_exp(j);
        const double pr = cfg.power(j) / cfg.p1;  // P_j / P_1
        const double hi_coef = std::pow(pr, 1.0 / aj);
        const double lo_coef = std::pow(pr / tj, 1.0 / aj);
        // serving-distance CDF support ends at y_max; beyond the matching r
        // both CDF arguments are 1
        const double r_end =
            std::pow(std::pow(yj.y_max(), aj) / (pr / tj), 1.0 / cfg.alpha1);
        const double lj =
            2.0 * M_PI * cfg.density(j) *
            integrate(
                [&](double r) {
                    const double ra = std::pow(r, cfg.alpha1 / aj);
                    return r * (yj.cdf(hi_coef * ra) - yj.cdf(lo_coef * ra));
                },
                0.0, r_end, s);
        if (j == 1)
            load.l1 = lj;
        else
            load.l2 = lj;
    }
    return load;
}

double k0_pmf(int k, double l_bar) {
    if (k < 0) return 0.0;
    if (l_bar <= 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(l_bar) - l_bar - std::lgamma(k + 1.0));
}

double u_in0_pmf(int u, int u_max, double l_bar) {
    if (u < 0 || u > u_max)
        throw std::invalid_argument("u_in0_pmf: u must lie in [0, u_max]");
    if (u < u_max) return k0_pmf(u, l_bar);
    // closed-form upper mass, no series truncation
    double below = 0.0;
    for (int k = 0; k < u_max; ++k) below += k0_pmf(k, l_bar);
    return 1.0 - below;
}

double in_probability(int u_max, double l_bar) {
    if (u_max == 0) return 0.0;
    if (l_bar < 1e-8) return 1.0;  // K_0 = 0 a.s.
    // e^-L sum_{k<U} L^k/k!  +  U/L * (1 - e^-L sum_{k<=U} L^k/k!)
    double term = std::exp(-l_bar);
    double head = 0.0;
    double cdf_u = 0.0;
    for (int k = 0; k <= u_max; ++k) {
        if (k < u_max) head += term;
        cdf_u += term;
        term *= l_bar / (k + 1.0);
    }
    const double pc = head + u_max / l_bar * (1.0 - cdf_u);
    return std::min(std::max(pc, 0.0), 1.0);
}

double thinned_macro_density(const NetworkConfig& cfg, int u_max,
                             double l_bar) {
    return (1.0 - in_probability(u_max, l_bar)) * cfg.lambda1;
}

InRequestState run_in_protocol(const std::vector<ProtocolUser>& users,
                               const std::vector<double>& bs_x,
                               const std::vector<double>& bs_y, int u_max,
                               Rng& rng) {
    InRequestState state;
    const std::size_t n_bs = bs_x.size();
    state.requesters.resize(n_bs);
    state.selected.resize(n_bs);
    state.u_in.assign(n_bs, 0);
    for (std::size_t b = 0; b < n_bs; ++b) {
        auto& req = state.requesters[b];
        for (std::size_t i = 0; i < users.size(); ++i) {
            const double dx = users[i].x - bs_x[b];
            const double dy = users[i].y - bs_y[b];
            if (users[i].interval.contains_sq(dx * dx + dy * dy))
                req.push_back(static_cast<int>(i));
        }
        const int take = std::min<int>(u_max, static_cast<int>(req.size()));
        // uniform subset via partial Fisher-Yates on a scratch copy
        std::vector<int> pool = req;
        for (int t = 0; t < take; ++t) {
            std::uniform_int_distribution<std::size_t> pick(t, pool.size() - 1);
            std::swap(pool[t], pool[pick(rng)]);
        }
        state.selected[b].assign(pool.begin(), pool.begin() + take);
        state.u_in[b] = take;
    }
    return state;
}

}  // namespace hetnet
