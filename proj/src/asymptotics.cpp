#include "hetnet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hetnet/combinatorics.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/in_scheme.hpp"

namespace hetnet {

int order_gain(int u, const NetworkConfig& cfg) {
    return std::min(cfg.n1 - u, cfg.n2);
}

namespace {

// Partition sums of one interference factor: table[n][k] = sum over the
// weighted partitions m of n with k parts of prod_a base_a^{m_a} / m_a!.
// The part count k determines the serving-distance moment the term needs.
std::vector<std::vector<double>> partition_table(
    const std::vector<double>& base, int n_max) {
    std::vector<std::vector<double>> table(n_max + 1);
    table[0] = {1.0};
    for (int n = 1; n <= n_max; ++n) {
        table[n].assign(n + 1, 0.0);
        for (const auto& m : weighted_partitions(n)) {
            double prod = 1.0;
            int parts = 0;
            for (int a = 1; a <= n; ++a) {
                for (int rep = 0; rep < m[a - 1]; ++rep)
                    prod *= base[a - 1] / (rep + 1.0);
                parts += m[a - 1];
            }
            table[n][parts] += prod;
        }
    }
    return table;
}

double coefficient_b_impl(int tier, const NetworkConfig& cfg,
                          const InParams& params, double p_cbar, double l_bar,
                          const ServingDistanceDist& yd) {
    const bool in_active = params.u_max > 0;
    const int u_j = (tier == 1 && in_active) ? params.u_max : 0;
    const double p_mass = (tier == 1 && in_active)
                              ? u_in0_pmf(params.u_max, params.u_max, l_bar)
                              : 1.0;
    const int n_total = (tier == 1 ? cfg.n1 : cfg.n2) - u_j;
    const double tj = params.threshold(tier);
    const double aj = cfg.pathloss_exp(tier);
    const double pj = cfg.power(tier);

    std::vector<double> base_ann(n_total), base_mt(n_total), base_pt(n_total);
    for (int a = 1; a <= n_total; ++a) {
        const double e1 = a - 2.0 / cfg.alpha1;
        const double c1 = 2.0 / cfg.alpha1 * M_PI * cfg.lambda1 / e1 *
                          std::pow(cfg.p1 / pj, 2.0 / cfg.alpha1);
        const double t_pow = std::pow(tj, -e1);
        base_ann[a - 1] = c1 * p_cbar * (1.0 - t_pow);
        base_mt[a - 1] = c1 * t_pow;
        const double e2 = a - 2.0 / cfg.alpha2;
        base_pt[a - 1] = 2.0 / cfg.alpha2 * M_PI * cfg.lambda2 / e2 *
                         std::pow(cfg.p2 / pj, 2.0 / cfg.alpha2);
    }
    const auto tab_ann = partition_table(base_ann, n_total);
    const auto tab_mt = partition_table(base_mt, n_total);
    const auto tab_pt = partition_table(base_pt, n_total);

    std::map<std::pair<int, int>, double> moments;
    auto moment = [&](int parts_macro, int parts_pico) {
        const auto key = std::make_pair(parts_macro, parts_pico);
        auto it = moments.find(key);
        if (it != moments.end()) return it->second;
        const double e = 2.0 * aj / cfg.alpha1 * parts_macro +
                         2.0 * aj / cfg.alpha2 * parts_pico;
        const double v = yd.moment(e);
        moments.emplace(key, v);
        return v;
    };

    double b = 0.0;
    for (const auto& c : compositions3(n_total)) {
        for (std::size_t ka = 0; ka < tab_ann[c.n1].size(); ++ka) {
            if (tab_ann[c.n1][ka] == 0.0) continue;
            for (std::size_t km = 0; km < tab_mt[c.n2].size(); ++km) {
                if (tab_mt[c.n2][km] == 0.0) continue;
                for (std::size_t kp = 0; kp < tab_pt[c.n3].size(); ++kp) {
                    if (tab_pt[c.n3][kp] == 0.0) continue;
                    b += tab_ann[c.n1][ka] * tab_mt[c.n2][km] *
                         tab_pt[c.n3][kp] *
                         moment(static_cast<int>(ka + km),
                                static_cast<int>(kp));
                }
            }
        }
    }
    return p_mass * b;
}

struct Prepared {
    ServingDistanceDist y1;
    ServingDistanceDist y2;
    double l_bar = 0.0;
    double p_cbar = 1.0;
};

Prepared prepare(const NetworkConfig& cfg, const InParams& params,
                 const QuadratureSettings& s) {
    Prepared p{ServingDistanceDist(1, cfg, s), ServingDistanceDist(2, cfg, s)};
    if (params.u_max > 0) {
        p.l_bar = in_load(cfg, params, p.y1, p.y2, s).total();
        p.p_cbar = 1.0 - in_probability(params.u_max, p.l_bar);
    }
    return p;
}

}  // namespace

double coefficient_b(int tier, const NetworkConfig& cfg,
                     const InParams& params, const QuadratureSettings& s) {
    const auto p = prepare(cfg, params, s);
    return coefficient_b_impl(tier, cfg, params, p.p_cbar, p.l_bar,
                              tier == 1 ? p.y1 : p.y2);
}

std::vector<int> optimal_u_order(const NetworkConfig& cfg) {
    std::vector<int> us;
    for (int u = 0; u <= std::max(cfg.n1 - cfg.n2, 0); ++u) us.push_back(u);
    return us;
}

AsymptoticResult asymptotic_outage(double beta, const NetworkConfig& cfg,
                                   const InParams& params,
                                   const QuadratureSettings& s) {
    AsymptoticResult r;
    const auto p = prepare(cfg, params, s);
    r.d = order_gain(params.u_max, cfg);
    r.b1 = coefficient_b_impl(1, cfg, params, p.p_cbar, p.l_bar, p.y1);
    r.b2 = coefficient_b_impl(2, cfg, params, p.p_cbar, p.l_bar, p.y2);
    const double a1 = p.y1.tier_probability();
    const double a2 = p.y2.tier_probability();
    const int d1 = cfg.n1 - params.u_max;
    if (d1 < cfg.n2)
        r.b = a1 * r.b1;
    else if (d1 > cfg.n2)
        r.b = a2 * r.b2;
    else
        r.b = a1 * r.b1 + a2 * r.b2;
    r.u_star_d = optimal_u_order(cfg);
    r.u_star = optimal_u_asymptotic(cfg, params.t1, params.t2, s).u_star;
    r.value = r.b * std::pow(beta, r.d);
    return r;
}

OptimalU optimal_u_asymptotic(const NetworkConfig& cfg, double t1, double t2,
                              const QuadratureSettings& s) {
    OptimalU res;
    const int ub = std::max(cfg.n1 - cfg.n2, 0);
    const ServingDistanceDist y1(1, cfg, s), y2(2, cfg, s);
    const double a1 = y1.tier_probability();
    const double a2 = y2.tier_probability();
    // thresholds, not U, set the request load
    const InParams thr{std::max(ub, 1), t1, t2};
    const double l_bar = in_load(cfg, thr, y1, y2, s).total();

    auto overall = [&](int u) {
        const InParams params{u, u > 0 ? t1 : 1.0, u > 0 ? t2 : 1.0};
        const double p_cbar =
            u > 0 ? 1.0 - in_probability(u, l_bar) : 1.0;
        const double lb = u > 0 ? l_bar : 0.0;
        const int d1 = cfg.n1 - u;
        double b = 0.0;
        if (d1 <= cfg.n2)
            b += a1 * coefficient_b_impl(1, cfg, params, p_cbar, lb, y1);
        if (d1 >= cfg.n2)
            b += a2 * coefficient_b_impl(2, cfg, params, p_cbar, lb, y2);
        return b;
    };

    res.coeff_at = overall(ub);
    if (ub == 0) {
        res.u_star = 0;
        res.coeff_below = 0.0;
        return res;
    }
    res.coeff_below = overall(ub - 1);
    res.u_star = res.coeff_at <= res.coeff_below ? ub : ub - 1;
    return res;
}

}  // namespace hetnet
