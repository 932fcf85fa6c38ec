#include "hetnet/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hetnet/kernels.hpp"
#include "hetnet/specfun.hpp"

namespace hetnet {

PointSet sample_ppp(double density, double window_radius, Rng& rng) {
    PointSet ps;
    ps.window_radius = window_radius;
    const double mean = density * M_PI * window_radius * window_radius;
    std::poisson_distribution<long> count_dist(mean);
    const long count = count_dist(rng);
    ps.x.reserve(count);
    ps.y.reserve(count);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long i = 0; i < count; ++i) {
        const double r = window_radius * std::sqrt(unit(rng));
        const double theta = 2.0 * M_PI * unit(rng);
        ps.push_back(r * std::cos(theta), r * std::sin(theta));
    }
    return ps;
}

Association associate(double ux, double uy, const PointSet& macro,
                      const PointSet& pico, const NetworkConfig& cfg) {
    if (macro.size() == 0 || pico.size() == 0)
        throw NumericError("associate: empty tier");
    const auto m = kernels::min_dist_sq(macro.x.data(), macro.y.data(),
                                        macro.size(), ux, uy);
    const auto p = kernels::min_dist_sq(pico.x.data(), pico.y.data(),
                                        pico.size(), ux, uy);
    // compare long-term RPs in log-domain: log P_j - alpha_j/2 * log d^2
    const double rp1 = std::log(cfg.p1) - 0.5 * cfg.alpha1 * std::log(m.dist_sq);
    const double rp2 = std::log(cfg.p2) - 0.5 * cfg.alpha2 * std::log(p.dist_sq);
    if (rp1 >= rp2) return {1, m.index, std::sqrt(m.dist_sq)};
    return {2, p.index, std::sqrt(p.dist_sq)};
}

namespace {

// exponent of the "other tier is farther in RP" void probability:
// Pr(no tier-k BS beats a tier-j serving distance z)
// = exp(-pi * lambda_k * (P_k/P_j)^(2/alpha_k) * z^(2*alpha_j/alpha_k))
double cross_term(int j, double z, const NetworkConfig& cfg) {
    const int k = (j == 1) ? 2 : 1;
    const double ratio = cfg.power(k) / cfg.power(j);
    return cfg.density(k) * std::pow(ratio, 2.0 / cfg.pathloss_exp(k)) *
           std::pow(z, 2.0 * cfg.pathloss_exp(j) / cfg.pathloss_exp(k));
}

double unnormalized_pdf(int j, double y, const NetworkConfig& cfg) {
    if (y <= 0.0) return 0.0;
    const double lj = cfg.density(j);
    return 2.0 * M_PI * lj * y *
           std::exp(-M_PI * (lj * y * y + cross_term(j, y, cfg)));
}

}  // namespace

double tier_probability(int tier, const NetworkConfig& cfg,
                        const QuadratureSettings& s) {
    if (tier != 1 && tier != 2)
        throw std::invalid_argument("tier_probability: tier must be 1 or 2");
    return semi_infinite_integral(
        [&](double z) { return unnormalized_pdf(tier, z, cfg); }, s);
}

double serving_distance_pdf(int tier, double y, const NetworkConfig& cfg,
                            const QuadratureSettings& s) {
    return unnormalized_pdf(tier, y, cfg) / tier_probability(tier, cfg, s);
}

double default_window_radius(const NetworkConfig& cfg) {
    const double r_base = 25.0 / std::sqrt(M_PI * cfg.lambda1);
    // truncated-tail interference below 1e-3 of the in-window expectation,
    // taking the typical serving distance as the inner reference radius
    const double r0 = 0.5 / std::sqrt(cfg.lambda1 + cfg.lambda2);
    const double r_tail1 = r0 * std::pow(1e3, 1.0 / (cfg.alpha1 - 2.0));
    const double r_tail2 = r0 * std::pow(1e3, 1.0 / (cfg.alpha2 - 2.0));
    return std::max({r_base, r_tail1, r_tail2});
}

ServingDistanceDist::ServingDistanceDist(int tier, const NetworkConfig& cfg,
                                         const QuadratureSettings& s)
    : tier_(tier), cfg_(cfg), quad_(s) {
    a_j_ = hetnet::tier_probability(tier, cfg, s);

    y_max_ = std::sqrt(45.0 / (M_PI * cfg.density(tier)));
    while (unnormalized_pdf(tier, y_max_, cfg) / a_j_ > 1e-18) y_max_ *= 1.25;

    // cumulative Simpson over a uniform grid (odd point count)
    const std::size_t n = 32769;
    grid_.resize(n);
    pdf_grid_.resize(n);
    cdf_grid_.resize(n);
    const double h = y_max_ / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        grid_[i] = h * static_cast<double>(i);
        pdf_grid_[i] = unnormalized_pdf(tier, grid_[i], cfg) / a_j_;
    }
    const auto& f = pdf_grid_;
    cdf_grid_[0] = 0.0;
    for (std::size_t i = 0; i + 2 < n; i += 2) {
        cdf_grid_[i + 1] =
            cdf_grid_[i] + h / 12.0 * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]);
        cdf_grid_[i + 2] =
            cdf_grid_[i] + h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    }
}

double ServingDistanceDist::pdf(double y) const {
    return unnormalized_pdf(tier_, y, cfg_) / a_j_;
}

double ServingDistanceDist::cdf(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= y_max_) return 1.0;
    const double h = grid_[1];
    const auto i = static_cast<std::size_t>(y / h);
    const std::size_t k = std::min(i, grid_.size() - 2);
    // cubic Hermite using the pdf as the exact derivative of the CDF
    const double t = (y - grid_[k]) / h;
    const double f0 = cdf_grid_[k], f1 = cdf_grid_[k + 1];
    const double d0 = pdf_grid_[k] * h, d1 = pdf_grid_[k + 1] * h;
    const double t2 = t * t, t3 = t2 * t;
    return f0 * (2 * t3 - 3 * t2 + 1) + d0 * (t3 - 2 * t2 + t) +
           f1 * (-2 * t3 + 3 * t2) + d1 * (t3 - t2);
}

double ServingDistanceDist::quantile(double p) const {
    p = std::min(std::max(p, 0.0), 1.0);
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return y_max_;
    const auto it = std::lower_bound(cdf_grid_.begin(), cdf_grid_.end(), p);
    std::size_t k = static_cast<std::size_t>(it - cdf_grid_.begin());
    if (k > 0) --k;
    if (k + 1 >= grid_.size()) k = grid_.size() - 2;
    // Newton in the bracketing cell, entirely on the tabulated Hermite CDF
    const double h = grid_[1];
    const double f0 = cdf_grid_[k], f1 = cdf_grid_[k + 1];
    const double d0 = pdf_grid_[k] * h, d1 = pdf_grid_[k + 1] * h;
    double t = 0.5;
    for (int iter = 0; iter < 4; ++iter) {
        const double t2 = t * t, t3 = t2 * t;
        const double val = f0 * (2 * t3 - 3 * t2 + 1) + d0 * (t3 - 2 * t2 + t) +
                           f1 * (-2 * t3 + 3 * t2) + d1 * (t3 - t2);
        const double der = f0 * (6 * t2 - 6 * t) + d0 * (3 * t2 - 4 * t + 1) +
                           f1 * (6 * t - 6 * t2) + d1 * (3 * t2 - 2 * t);
        if (der <= 0.0) break;
        t = std::min(std::max(t - (val - p) / der, 0.0), 1.0);
    }
    return grid_[k] + t * h;
}

double ServingDistanceDist::sample(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return quantile(unit(rng));
}

double ServingDistanceDist::moment(double e) const {
    // log-space integrand: y^e overflows before the Gaussian-type pdf tail
    // underflows at the probe points of the semi-infinite rule
    const double lj = cfg_.density(tier_);
    const double lc = std::log(2.0 * M_PI * lj / a_j_);
    return semi_infinite_integral(
        [&](double y) {
            if (y <= 0.0) return 0.0;
            const double lg =
                lc + (e + 1.0) * std::log(y) -
                M_PI * (lj * y * y + cross_term(tier_, y, cfg_));
            return lg < -700.0 ? 0.0 : std::exp(lg);
        },
        quad_);
}

}  // namespace hetnet
