#include "hetnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetnet/combinatorics.hpp"
#include "hetnet/specfun.hpp"

namespace hetnet {

ExclusionRadii exclusion_radii(int tier, double y, const NetworkConfig& cfg,
                               const InParams& params) {
    ExclusionRadii r;
    if (tier == 1) {
        r.r_1c = y;
        r.r_1o = std::pow(params.t1, 1.0 / cfg.alpha1) * y;
        r.r_2 = std::pow(cfg.p2 / cfg.p1, 1.0 / cfg.alpha2) *
                std::pow(y, cfg.alpha1 / cfg.alpha2);
    } else {
        const double base = std::pow(cfg.p1 / cfg.p2, 1.0 / cfg.alpha1) *
                            std::pow(y, cfg.alpha2 / cfg.alpha1);
        r.r_1c = base;
        r.r_1o = std::pow(params.t2, 1.0 / cfg.alpha1) * base;
        r.r_2 = y;
    }
    return r;
}

namespace {

// One multiplicative Laplace factor L(s) = exp(phi(s)), carried as
// log L plus the sign-absorbed scaled derivatives of the exponent,
// g_a = (-s)^a phi^(a)(s) / a!  (all nonnegative here).
struct Factor {
    double log_l = 0.0;
    std::vector<double> g;  // g[a-1] = g_a, a = 1..n_hi
};

double z_of(double s, double r, double alpha) {
    if (r <= 0.0) return 0.0;
    return 1.0 / (1.0 + s * std::pow(r, -alpha));
}

Factor tail_factor(double s, double r, double density, double alpha,
                   int n_hi) {
    Factor f;
    f.g.assign(n_hi, 0.0);
    if (s <= 0.0 || density <= 0.0) return f;
    const double c = 2.0 * M_PI * density / alpha * std::pow(s, 2.0 / alpha);
    const double z = z_of(s, r, alpha);
    f.log_l = -c * beta_upper(2.0 / alpha, 1.0 - 2.0 / alpha, z);
    for (int a = 1; a <= n_hi; ++a)
        f.g[a - 1] = c * beta_upper(1.0 + 2.0 / alpha, a - 2.0 / alpha, z);
    return f;
}

Factor annulus_factor(double s, double r_1c, double r_1o,
                      const NetworkConfig& cfg, double p_cbar, int n_hi) {
    Factor f;
    f.g.assign(n_hi, 0.0);
    if (s <= 0.0 || p_cbar <= 0.0 || r_1o <= r_1c) return f;
    const double a1 = cfg.alpha1;
    const double c =
        2.0 * M_PI * p_cbar * cfg.lambda1 / a1 * std::pow(s, 2.0 / a1);
    const double zc = z_of(s, r_1c, a1);
    const double zo = z_of(s, r_1o, a1);
    f.log_l = -c * (beta_upper(2.0 / a1, 1.0 - 2.0 / a1, zc) -
                    beta_upper(2.0 / a1, 1.0 - 2.0 / a1, zo));
    for (int a = 1; a <= n_hi; ++a)
        f.g[a - 1] = c * (beta_upper(1.0 + 2.0 / a1, a - 2.0 / a1, zc) -
                          beta_upper(1.0 + 2.0 / a1, a - 2.0 / a1, zo));
    return f;
}

// t[n] = (-s)^n L^(n)(s) / n!; Faa di Bruno over weighted partitions with
// the a! already folded into g_a, summed in log space (Kahan).
std::vector<double> factor_terms(const Factor& f, int n_hi) {
    std::vector<double> t(n_hi + 1, 0.0);
    t[0] = std::exp(f.log_l);
    std::vector<double> lg(n_hi);
    for (int a = 0; a < n_hi; ++a)
        lg[a] = f.g[a] > 0.0 ? std::log(f.g[a])
                             : -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_hi; ++n) {
        double sum = 0.0, comp = 0.0;
        for (const auto& m : weighted_partitions(n)) {
            double lt = f.log_l;
            bool dead = false;
            for (int a = 1; a <= n; ++a) {
                if (m[a - 1] == 0) continue;
                if (f.g[a - 1] <= 0.0) {
                    dead = true;
                    break;
                }
                lt += m[a - 1] * lg[a - 1] - std::lgamma(m[a - 1] + 1.0);
            }
            if (dead) continue;
            const double v = std::exp(lt) - comp;
            const double next = sum + v;
            comp = (next - sum) - v;
            sum = next;
        }
        t[n] = sum;
    }
    return t;
}

// shell[n] = (coverage term of order n) = sum over n1+n2+n3 = n of the
// per-factor terms; sum over all n is 1.
std::vector<double> shell_values(const NetworkConfig& cfg,
                                 const InParams& params, double p_cbar,
                                 int tier, double beta, double y, int n_hi) {
    std::vector<double> sh(n_hi + 1, 0.0);
    if (beta <= 0.0) {
        sh[0] = 1.0;
        return sh;
    }
    const auto rad = exclusion_radii(tier, y, cfg, params);
    const double aj = cfg.pathloss_exp(tier);
    const double ya = std::pow(y, aj);
    const double s1 = beta * ya * cfg.p1 / cfg.power(tier);
    const double s2 = beta * ya * cfg.p2 / cfg.power(tier);
    const auto ta = factor_terms(
        annulus_factor(s1, rad.r_1c, rad.r_1o, cfg, p_cbar, n_hi), n_hi);
    const auto t1 = factor_terms(
        tail_factor(s1, rad.r_1o, cfg.lambda1, cfg.alpha1, n_hi), n_hi);
    const auto t2 = factor_terms(
        tail_factor(s2, rad.r_2, cfg.lambda2, cfg.alpha2, n_hi), n_hi);
    for (int n = 0; n <= n_hi; ++n)
        for (const auto& c : compositions3(n))
            sh[n] += ta[c.n1] * t1[c.n2] * t2[c.n3];
    return sh;
}

}  // namespace

double laplace_tail(double s, double r, double density, double alpha) {
    return std::exp(tail_factor(s, r, density, alpha, 0).log_l);
}

double laplace_1c(double s, double r_1c, double r_1o, const NetworkConfig& cfg,
                  double p_cbar) {
    return std::exp(annulus_factor(s, r_1c, r_1o, cfg, p_cbar, 0).log_l);
}

double laplace_tail_deriv(int n, double s, double r, double density,
                          double alpha) {
    const auto t = factor_terms(tail_factor(s, r, density, alpha, n), n);
    return t[n] * std::tgamma(n + 1.0);
}

double laplace_1c_deriv(int n, double s, double r_1c, double r_1o,
                        const NetworkConfig& cfg, double p_cbar) {
    const auto t =
        factor_terms(annulus_factor(s, r_1c, r_1o, cfg, p_cbar, n), n);
    return t[n] * std::tgamma(n + 1.0);
}

CoverageEngine::CoverageEngine(const NetworkConfig& cfg,
                               const InParams& params,
                               const QuadratureSettings& quad)
    : cfg_(cfg), params_(params), quad_(quad) {
    validate(cfg_);
    validate(params_, cfg_);
    validate(quad_);
    y1_ = std::make_shared<ServingDistanceDist>(1, cfg_, quad_);
    y2_ = std::make_shared<ServingDistanceDist>(2, cfg_, quad_);
    if (!params_.is_non_in()) load_ = in_load(cfg_, params_, *y1_, *y2_, quad_);
    p_cbar_ = 1.0 - in_probability(params_.u_max, load_.total());
    u_pmf_.resize(params_.u_max + 1);
    for (int u = 0; u <= params_.u_max; ++u)
        u_pmf_[u] = u_in0_pmf(u, params_.u_max, load_.total());
}

double CoverageEngine::tier_prob(int tier) const {
    return serving_dist(tier).tier_probability();
}

double CoverageEngine::conditional_sum(
    int tier, double beta, double y, int terms_from, int terms_to,
    const std::vector<double>& order_weight) const {
    const auto sh =
        shell_values(cfg_, params_, p_cbar_, tier, beta, y, terms_to);
    double acc = 0.0;
    for (int n = terms_from; n <= terms_to; ++n)
        acc += order_weight[n - terms_from] * sh[n];
    return acc;
}

double CoverageEngine::coverage_macro(double beta) const {
    const int n_hi = cfg_.n1 - 1;
    std::vector<double> w(n_hi + 1, 0.0);
    for (int n = 0; n <= n_hi; ++n) {
        const int u_cap = std::min(params_.u_max, cfg_.n1 - 1 - n);
        for (int u = 0; u <= u_cap; ++u) w[n] += u_pmf_[u];
    }
    return integrate(
        [&](double y) {
            if (y <= 0.0) return 0.0;
            return y1_->pdf(y) * conditional_sum(1, beta, y, 0, n_hi, w);
        },
        0.0, y1_->y_max(), quad_);
}

double CoverageEngine::coverage_pico(double beta) const {
    const std::vector<double> w(cfg_.n2, 1.0);
    return integrate(
        [&](double y) {
            if (y <= 0.0) return 0.0;
            return y2_->pdf(y) * conditional_sum(2, beta, y, 0, cfg_.n2 - 1, w);
        },
        0.0, y2_->y_max(), quad_);
}

double CoverageEngine::coverage_macro_given_u(double beta, int u) const {
    if (u < 0 || u > params_.u_max)
        throw std::invalid_argument(
            "coverage_macro_given_u: u must lie in [0, u_max]");
    const int n_hi = cfg_.n1 - u - 1;
    const std::vector<double> w(n_hi + 1, 1.0);
    return integrate(
        [&](double y) {
            if (y <= 0.0) return 0.0;
            return y1_->pdf(y) * conditional_sum(1, beta, y, 0, n_hi, w);
        },
        0.0, y1_->y_max(), quad_);
}

CoverageResult CoverageEngine::coverage(double beta) const {
    CoverageResult r;
    r.beta = beta;
    r.a1 = y1_->tier_probability();
    r.a2 = y2_->tier_probability();
    r.s1 = coverage_macro(beta);
    r.s2 = coverage_pico(beta);
    r.s = r.a1 * r.s1 + r.a2 * r.s2;
    return r;
}

namespace {

// Positive tail series sum_{n >= lead} w(n) shell(n); relative truncation
// is checked pointwise, which bounds the relative error of the integral.
double outage_integrand(const NetworkConfig& cfg, const InParams& params,
                        double p_cbar, const ServingDistanceDist& yd, int tier,
                        double beta, double y, int n_lead,
                        const std::vector<double>& w) {
    if (y <= 0.0) return 0.0;
    const double pdf = yd.pdf(y);
    if (pdf <= 0.0) return 0.0;
    const int n_max = n_lead + static_cast<int>(w.size()) - 1;
    const auto sh = shell_values(cfg, params, p_cbar, tier, beta, y, n_max);
    double sum = 0.0;
    for (int n = n_lead; n <= n_max; ++n) sum += w[n - n_lead] * sh[n];
    const double last = w.back() * sh[n_max];
    const double prev = w[w.size() - 2] * sh[n_max - 1];
    if (last > 0.0 && sum > 0.0) {
        const double ratio = prev > 0.0 ? last / prev : 1.0;
        const double tail =
            ratio < 0.9 ? last * ratio / (1.0 - ratio) : sum;
        if (tail > 1e-5 * sum)
            throw NumericError(
                "outage series truncation failed; use 1 - coverage at this "
                "SIR threshold");
    }
    return pdf * sum;
}

}  // namespace

double CoverageEngine::outage_macro(double beta) const {
    const int n_lead = cfg_.n1 - params_.u_max;
    const int n_extra = 12;
    std::vector<double> w(n_extra + 1, 0.0);
    for (int i = 0; i <= n_extra; ++i) {
        const int n = n_lead + i;
        for (int u = std::max(cfg_.n1 - n, 0); u <= params_.u_max; ++u)
            w[i] += u_pmf_[u];
    }
    return integrate(
        [&](double y) {
            return outage_integrand(cfg_, params_, p_cbar_, *y1_, 1, beta, y,
                                    n_lead, w);
        },
        0.0, y1_->y_max(), quad_);
}

double CoverageEngine::outage_pico(double beta) const {
    const std::vector<double> w(13, 1.0);
    return integrate(
        [&](double y) {
            return outage_integrand(cfg_, params_, p_cbar_, *y2_, 2, beta, y,
                                    cfg_.n2, w);
        },
        0.0, y2_->y_max(), quad_);
}

double CoverageEngine::outage(double beta) const {
    return y1_->tier_probability() * outage_macro(beta) +
           y2_->tier_probability() * outage_pico(beta);
}

}  // namespace hetnet
