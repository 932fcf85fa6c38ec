// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hetnet/analysis.hpp"
#include "hetnet/asymptotics.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/specfun.hpp"

using namespace hetnet;

namespace {

NetworkConfig reference_net() {
    NetworkConfig net;
    net.lambda1 = 0.0005;
    net.lambda2 = 0.001;
    net.lambda_u = 0.015;
    net.p1 = std::pow(10.0, 1.5);  // 15 dB over the pico tier
    net.p2 = 1.0;
    net.alpha1 = 4.5;
    net.alpha2 = 4.7;
    net.n1 = 10;
    net.n2 = 8;
    return net;
}

InParams params_for_threshold(double t) {
    if (t <= 1.0) return InParams{0, 1.0, 1.0};
    return InParams{9, t, t};
}

struct Shared {
    std::vector<double> thresholds = {1, 2, 5, 10, 20, 50};
    std::vector<double> s_analytical;  // per threshold, beta = 10 dB
    std::vector<double> s_mc;
};

double fit_slope(const std::vector<double>& betas,
                 const std::vector<double>& outages) {
    const std::size_t n = betas.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log10(betas[i]);
        const double y = std::log10(outages[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> beta_grid() {
    std::vector<double> b;
    for (int i = 0; i <= 8; ++i) b.push_back(1e-5 * std::pow(10.0, i / 4.0));
    return b;
}

bool criterion1(Shared& sh) {
    const NetworkConfig net = reference_net();
    const QuadratureSettings s{};
    const double beta = 10.0;  // 10 dB
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double t : sh.thresholds) {
        const InParams in = params_for_threshold(t);
        const CoverageEngine eng(net, in, s);
        const double sa = eng.coverage(beta).s;
        const auto est =
            estimate_coverage(net, in, {beta}, 100000, 71507, SimOptions{}, s);
        sh.s_analytical.push_back(sa);
        sh.s_mc.push_back(est[0].mean);
        worst = std::max(worst, std::abs(sa - est[0].mean) / sa);
    }
    const double mins =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count() /
        60.0;
    const bool ok = worst <= 0.06 && mins <= 15.0;
    std::printf(
        "%s criterion 1: engine agreement over T in {1,2,5,10,20,50}, "
        "1e5 trials each: max relative gap %.4f (budget 0.06), %.1f min "
        "(budget 15)\n",
        ok ? "PASS" : "FAIL", worst, mins);
    return ok;
}

bool criterion2(const Shared& sh) {
    const double base = sh.s_analytical[0];  // T = 1: nulling disabled
    double best = base;
    std::size_t peak = 0;
    for (std::size_t i = 1; i < sh.s_analytical.size(); ++i)
        if (sh.s_analytical[i] > best) {
            best = sh.s_analytical[i];
            peak = i;
        }
    const double gain = best / base - 1.0;
    bool unimodal = peak > 0 && peak + 1 < sh.s_analytical.size();
    for (std::size_t i = 1; i < sh.s_analytical.size() && unimodal; ++i) {
        if (i <= peak && sh.s_analytical[i] < sh.s_analytical[i - 1])
            unimodal = false;
        if (i > peak && sh.s_analytical[i] > sh.s_analytical[i - 1])
            unimodal = false;
    }
    const bool ok = gain > 0.0 && gain <= 0.25 && unimodal;
    std::printf(
        "%s criterion 2: nulling gain %.4f (must be in (0, 0.25]) and "
        "coverage-vs-threshold %s (peak at T=%g)\n",
        ok ? "PASS" : "FAIL", gain,
        unimodal ? "rises then falls" : "is NOT unimodal",
        sh.thresholds[peak]);
    return ok;
}

bool criterion3() {
    const NetworkConfig net = reference_net();
    const QuadratureSettings s{};
    const auto betas = beta_grid();
    const auto start = std::chrono::steady_clock::now();

    auto outage_curve = [&](const InParams& in) {
        const CoverageEngine eng(net, in, s);
        std::vector<double> out;
        for (double b : betas) out.push_back(eng.outage(b));
        return out;
    };

    bool ok = true;
    double worst_dev = 0.0;
    for (int u : {0, 2, 9}) {
        const InParams in =
            u == 0 ? InParams{0, 1.0, 1.0} : InParams{u, 10.0, 10.0};
        const double slope = fit_slope(betas, outage_curve(in));
        const double want = std::min(net.n1 - u, net.n2);
        worst_dev = std::max(worst_dev, std::abs(slope - want));
        if (std::abs(slope - want) > 0.15) ok = false;
    }

    // same U, different thresholds: parallel curves with a true offset
    double worst_dslope = 0.0, min_offset = HUGE_VAL;
    for (int u : {2, 9}) {
        const auto o5 = outage_curve(InParams{u, 5.0, 5.0});
        const auto o10 = outage_curve(InParams{u, 10.0, 10.0});
        worst_dslope = std::max(
            worst_dslope, std::abs(fit_slope(betas, o5) - fit_slope(betas, o10)));
        double mean_off = 0.0;
        for (std::size_t i = 0; i < betas.size(); ++i)
            mean_off += std::log10(o5[i]) - std::log10(o10[i]);
        min_offset = std::min(min_offset, std::abs(mean_off / betas.size()));
    }
    if (worst_dslope > 0.1 || min_offset <= 0.005) ok = false;
    const double mins =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count() /
        60.0;
    if (mins > 10.0) ok = false;
    std::printf(
        "%s criterion 3: log-log outage slopes match min{N1-U, N2} "
        "(worst dev %.3f, budget 0.15); threshold changes shift curves "
        "without tilting (dslope %.3f <= 0.1, offset %.3f decades); "
        "%.1f min (budget 10)\n",
        ok ? "PASS" : "FAIL", worst_dev, worst_dslope, min_offset, mins);
    return ok;
}

bool criterion4() {
    const NetworkConfig net = reference_net();
    const QuadratureSettings s{};
    const double beta = 1e-5;
    bool ok = true;
    double worst = 1.0;
    for (int u : {0, net.n1 - net.n2, net.n1 - net.n2 + 2}) {
        const InParams in =
            u == 0 ? InParams{0, 1.0, 1.0} : InParams{u, 10.0, 10.0};
        const CoverageEngine eng(net, in, s);
        const AsymptoticResult r = asymptotic_outage(beta, net, in, s);
        const double ratio = eng.outage(beta) / r.value;
        if (std::abs(ratio - 1.0) > std::abs(worst - 1.0)) worst = ratio;
        if (ratio < 0.9 || ratio > 1.1) ok = false;
    }
    std::printf(
        "%s criterion 4: exact outage over b*beta^d at beta=1e-5 stays in "
        "[0.9, 1.1] for U in {0, 2, 4} (worst ratio %.5f)\n",
        ok ? "PASS" : "FAIL", worst);
    return ok;
}

bool criterion5() {
    const NetworkConfig net = reference_net();
    const QuadratureSettings s{};
    bool ok = true;

    const std::vector<int> order = optimal_u_order(net);
    if (order != std::vector<int>{0, 1, 2}) ok = false;
    for (int u : order)
        if (order_gain(u, net) != net.n2) ok = false;

    // exhaustive check of the coefficient comparison at T1 = T2 = 10
    const double t = 10.0, beta = 1e-5;
    const OptimalU pick = optimal_u_asymptotic(net, t, t, s);
    double best_out = HUGE_VAL;
    int best_u = -1;
    std::vector<double> outs;
    for (int u : order) {
        const InParams in = u == 0 ? InParams{0, 1.0, 1.0} : InParams{u, t, t};
        const CoverageEngine eng(net, in, s);
        const double out = eng.outage(beta);
        outs.push_back(out);
        if (out < best_out) {
            best_out = out;
            best_u = u;
        }
    }
    // allow quadrature-level slack when two candidates are nearly tied
    if (pick.u_star != best_u &&
        outs[pick.u_star] > best_out * (1.0 + 1e-6))
        ok = false;
    std::printf(
        "%s criterion 5: order-gain argmax set {0,1,2} achieves order %d; "
        "asymptotic pick U=%d matches the exhaustive exact minimum U=%d at "
        "beta=1e-5\n",
        ok ? "PASS" : "FAIL", net.n2, pick.u_star, best_u);
    return ok;
}

bool criterion6() {
    const NetworkConfig net = reference_net();
    const InParams in{9, 10.0, 10.0};
    const QuadratureSettings s{};
    bool ok = true;

    double worst_residual = 0.0, worst_ks = 0.0;
    const double ks_crit = 1.63 / std::sqrt(10000.0);  // 1% level
    for (int u : {0, 3, 9}) {
        const ZfbfReport r = zfbf_oracle(10, u, 10000, 8800 + u);
        worst_residual = std::max(worst_residual, r.max_residual);
        worst_ks = std::max(worst_ks, r.ks_desired);
        if (u > 0) worst_ks = std::max(worst_ks, r.ks_interferer);
        if (r.max_residual >= 1e-10 || r.ks_desired >= ks_crit ||
            (u > 0 && r.ks_interferer >= ks_crit))
            ok = false;
    }

    // request-count distribution at the serving macro BS vs Poisson with the
    // analytical mean load, and the honored fraction vs the closed form
    const CoverageEngine eng(net, in, s);
    const double l_bar = eng.l_bar();
    const auto outcomes = run_trials(net, in, 20000, 616, SimOptions{}, s);
    std::vector<long> hist;
    long n1_trials = 0, req = 0, hon = 0;
    for (const auto& t : outcomes) {
        req += t.typical_requests;
        hon += t.typical_honored;
        if (t.tier != 1) continue;
        if (std::size_t(t.k0) >= hist.size()) hist.resize(t.k0 + 1, 0);
        ++hist[t.k0];
        ++n1_trials;
    }
    double chi2 = 0.0, pool_exp = 0.0;
    long pool_obs = 0;
    int dof = -1;
    double tail = 1.0;
    for (std::size_t k = 0; k < hist.size() + 20; ++k) {
        const double pk = k0_pmf(int(k), l_bar);
        tail -= pk;
        pool_exp += pk * n1_trials;
        pool_obs += k < hist.size() ? hist[k] : 0;
        if (pool_exp >= 8.0) {
            chi2 += (pool_obs - pool_exp) * (pool_obs - pool_exp) / pool_exp;
            ++dof;
            pool_exp = 0.0;
            pool_obs = 0;
        }
    }
    pool_exp += std::max(tail, 0.0) * n1_trials;
    if (pool_exp > 0.0 || pool_obs > 0) {
        chi2 += (pool_obs - pool_exp) * (pool_obs - pool_exp) /
                std::max(pool_exp, 1e-9);
        ++dof;
    }
    // 1% chi-square critical values for dof 1..12
    const double crit[] = {6.63,  9.21,  11.34, 13.28, 15.09, 16.81,
                           18.48, 20.09, 21.67, 23.21, 24.72, 26.22};
    const double chi_crit = crit[std::clamp(dof, 1, 12) - 1];
    if (chi2 >= chi_crit) ok = false;

    const double pc_emp = double(hon) / double(req);
    const double pc = in_probability(in.u_max, l_bar);
    if (std::abs(pc_emp - pc) / pc > 0.02) ok = false;
    std::printf(
        "%s criterion 6: beamformer residual %.2e (< 1e-10), KS max %.4f "
        "(< %.4f), request-count chi2 %.1f (dof %d, crit %.1f), honored "
        "fraction %.4f vs %.4f closed form (2%% budget)\n",
        ok ? "PASS" : "FAIL", worst_residual, worst_ks, ks_crit, chi2, dof,
        chi_crit, pc_emp, pc);
    return ok;
}

double fd_deriv(const std::function<double(double)>& L, int n, double s,
                double h) {
    const auto stencil = [&](double hh) {
        switch (n) {
            case 1:
                return (L(s + hh) - L(s - hh)) / (2.0 * hh);
            case 2:
                return (L(s + hh) - 2.0 * L(s) + L(s - hh)) / (hh * hh);
            case 3:
                return (L(s + 2 * hh) - 2.0 * L(s + hh) + 2.0 * L(s - hh) -
                        L(s - 2 * hh)) /
                       (2.0 * hh * hh * hh);
            default:
                return (L(s + 2 * hh) - 4.0 * L(s + hh) + 6.0 * L(s) -
                        4.0 * L(s - hh) + L(s - 2 * hh)) /
                       (hh * hh * hh * hh);
        }
    };
    const double d1 = stencil(h), d2 = stencil(h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

bool criterion7() {
    const NetworkConfig net = reference_net();
    const QuadratureSettings s{};
    bool ok = true;

    // transform derivatives vs finite differences on 50 random points drawn
    // from the regime the coverage integrand visits; draws whose stencil
    // would be rounding-dominated are resampled (the conditioning bound is
    // computed a priori from eps/h_rel^n)
    std::mt19937_64 gen(404);
    std::uniform_real_distribution<double> uy(1.0, 15.0);
    std::uniform_real_distribution<double> ubt(-1.0, 1.7);
    const double h_rel = 0.04;
    double worst_fd = 0.0;
    int accepted = 0, tried = 0;
    while (accepted < 50 && tried < 2000) {
        ++tried;
        const double y = uy(gen);
        const double beta = std::pow(10.0, ubt(gen));
        const double sv = beta * std::pow(y, net.alpha1);
        const double r1c = y;
        const double r1o = std::pow(10.0, 1.0 / net.alpha1) * y;
        const double p_cbar = 0.4;
        const double h = h_rel * sv;
        const auto lt = [&](double x) {
            return laplace_tail(x, r1o, net.lambda1, net.alpha1);
        };
        const auto la = [&](double x) {
            return laplace_1c(x, r1c, r1o, net, p_cbar);
        };
        double w1[5], w2[5];
        bool conditioned = true;
        for (int n = 1; n <= 4 && conditioned; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            w1[n] = sign * std::pow(sv, n) * fd_deriv(lt, n, sv, h);
            w2[n] = sign * std::pow(sv, n) * fd_deriv(la, n, sv, h);
            const double noise = 50.0 * 1.1e-16 * std::pow(1.0 / h_rel, n);
            if (std::abs(w1[n]) < 1e4 * noise ||
                std::abs(w2[n]) < 1e4 * noise)
                conditioned = false;
        }
        if (!conditioned) continue;
        ++accepted;
        for (int n = 1; n <= 4; ++n) {
            const double g1 =
                laplace_tail_deriv(n, sv, r1o, net.lambda1, net.alpha1);
            const double g2 = laplace_1c_deriv(n, sv, r1c, r1o, net, p_cbar);
            worst_fd =
                std::max(worst_fd, std::abs(g1 - w1[n]) / std::abs(w1[n]));
            worst_fd =
                std::max(worst_fd, std::abs(g2 - w2[n]) / std::abs(w2[n]));
        }
    }
    if (worst_fd > 1e-3 || accepted < 50) ok = false;

    // normalizations and tier-probability closure
    double worst_norm = 0.0;
    for (int tier : {1, 2}) {
        const double total = semi_infinite_integral(
            [&](double y) { return serving_distance_pdf(tier, y, net, s); },
            s);
        worst_norm = std::max(worst_norm, std::abs(total - 1.0));
    }
    const double closure =
        std::abs(tier_probability(1, net, s) + tier_probability(2, net, s) -
                 1.0);
    if (worst_norm > 1e-8 || closure > 1e-8) ok = false;

    // thresholds at 1 reduce exactly to the baseline scheme
    const CoverageEngine base(net, InParams{0, 1.0, 1.0}, s);
    const CoverageEngine lim(net, InParams{9, 1.0 + 1e-13, 1.0 + 1e-13}, s);
    double worst_red = 0.0;
    for (double beta : {0.5, 10.0}) {
        worst_red = std::max(worst_red, std::abs(lim.coverage_macro(beta) -
                                                 base.coverage_macro(beta)));
        worst_red = std::max(worst_red, std::abs(lim.coverage_pico(beta) -
                                                 base.coverage_pico(beta)));
    }
    if (worst_red > 1e-10) ok = false;

    // pico outage coefficient strictly decreasing in U
    double prev = HUGE_VAL;
    bool decreasing = true;
    for (int u : {1, 2, 5, 9}) {
        const double b2 = coefficient_b(2, net, InParams{u, 10.0, 10.0}, s);
        if (b2 >= prev) decreasing = false;
        prev = b2;
    }
    if (!decreasing) ok = false;

    std::printf(
        "%s criterion 7: derivative checks worst rel err %.2e (<= 1e-3); "
        "pdf normalization and tier closure within %.1e (<= 1e-8); "
        "baseline reduction within %.1e (<= 1e-10); pico coefficient %s in "
        "U\n",
        ok ? "PASS" : "FAIL", worst_fd, std::max(worst_norm, closure),
        worst_red, decreasing ? "strictly decreasing" : "NOT decreasing");
    return ok;
}

}  // namespace

int main() {
    Shared sh;
    bool all = true;
    all &= criterion1(sh);
    all &= criterion2(sh);
    all &= criterion3();
    all &= criterion4();
    all &= criterion5();
    all &= criterion6();
    all &= criterion7();
    std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
