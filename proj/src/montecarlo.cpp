#include "hetnet/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "hetnet/kernels.hpp"

namespace hetnet {

namespace {

constexpr int kTypical = -1;
constexpr int kNoUser = -2;

// Uniform-cell spatial index over the simulation disc; nearest-point and
// annulus queries for the full-scheduling mode.
class GridIndex {
  public:
    GridIndex(const PointSet& ps, double window_radius) : ps_(ps) {
        const double target_cell =
            ps.size() > 0 ? 2.0 * window_radius / std::sqrt(double(ps.size()))
                          : window_radius;
        n_ = std::clamp(int(2.0 * window_radius / target_cell), 1, 512);
        cell_ = 2.0 * window_radius / n_;
        origin_ = -window_radius;
        cells_.resize(std::size_t(n_) * n_);
        for (std::size_t i = 0; i < ps.size(); ++i)
            cells_[cell_of(ps.x[i], ps.y[i])].push_back(int(i));
    }

    kernels::MinResult nearest(double px, double py) const {
        kernels::MinResult best{std::numeric_limits<double>::infinity(), 0};
        const int cx = coord(px), cy = coord(py);
        for (int ring = 0; ring < n_; ++ring) {
            const double reach = (ring - 1) * cell_;
            if (reach > 0.0 && reach * reach > best.dist_sq) break;
            bool any = false;
            for (int ix = cx - ring; ix <= cx + ring; ++ix) {
                if (ix < 0 || ix >= n_) continue;
                for (int iy = cy - ring; iy <= cy + ring; ++iy) {
                    if (iy < 0 || iy >= n_) continue;
                    if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring)
                        continue;
                    any = true;
                    for (int i : cells_[std::size_t(iy) * n_ + ix]) {
                        const double dx = ps_.x[i] - px;
                        const double dy = ps_.y[i] - py;
                        const double d2 = dx * dx + dy * dy;
                        if (d2 < best.dist_sq) {
                            best.dist_sq = d2;
                            best.index = std::size_t(i);
                        }
                    }
                }
            }
            if (!any && ring > 0 && (cx + ring >= n_ && cx - ring < 0 &&
                                     cy + ring >= n_ && cy - ring < 0))
                break;  // whole grid exhausted
        }
        return best;
    }

    template <typename Fn>
    void for_each_in_annulus(double px, double py, double lo_sq, double hi_sq,
                             Fn&& fn) const {
        const double hi = std::sqrt(hi_sq);
        const int x0 = coord(px - hi), x1 = coord(px + hi);
        const int y0 = coord(py - hi), y1 = coord(py + hi);
        for (int ix = std::max(x0, 0); ix <= std::min(x1, n_ - 1); ++ix)
            for (int iy = std::max(y0, 0); iy <= std::min(y1, n_ - 1); ++iy)
                for (int i : cells_[std::size_t(iy) * n_ + ix]) {
                    const double dx = ps_.x[i] - px;
                    const double dy = ps_.y[i] - py;
                    const double d2 = dx * dx + dy * dy;
                    if (d2 > lo_sq && d2 < hi_sq) fn(i, d2);
                }
    }

  private:
    int coord(double v) const {
        return std::clamp(int((v - origin_) / cell_), 0, n_ - 1);
    }
    std::size_t cell_of(double x, double y) const {
        return std::size_t(coord(y)) * n_ + coord(x);
    }

    const PointSet& ps_;
    int n_ = 1;
    double cell_ = 0.0;
    double origin_ = 0.0;
    std::vector<std::vector<int>> cells_;
};

Association associate_grid(double px, double py, const GridIndex& gm,
                           const GridIndex& gp, const NetworkConfig& cfg) {
    const auto m = gm.nearest(px, py);
    const auto p = gp.nearest(px, py);
    const double rp1 = std::log(cfg.p1) - 0.5 * cfg.alpha1 * std::log(m.dist_sq);
    const double rp2 = std::log(cfg.p2) - 0.5 * cfg.alpha2 * std::log(p.dist_sq);
    if (rp1 >= rp2) return {1, m.index, std::sqrt(m.dist_sq)};
    return {2, p.index, std::sqrt(p.dist_sq)};
}

// interference at the origin from one tier, with optional exclusions
double tier_interference(const PointSet& ps, double power, double alpha,
                         std::size_t skip, const std::vector<char>& muted,
                         const std::vector<char>* active, Rng& rng) {
    std::vector<double> d2(ps.size());
    kernels::dist_sq(ps.x.data(), ps.y.data(), ps.size(), 0.0, 0.0, d2.data());
    std::exponential_distribution<double> fade(1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double h = fade(rng);  // drawn unconditionally: keeps the
                                     // consumption pattern fixed per BS
        if (i == skip) continue;
        if (!muted.empty() && muted[i]) continue;
        if (active && !(*active)[i]) continue;
        acc += power * h * std::pow(d2[i], -0.5 * alpha);
    }
    return acc;
}

TrialOutcome trial_approx(const NetworkConfig& cfg, const InParams& params,
                          const ServingDistanceDist& y1,
                          const ServingDistanceDist& y2, Rng& rng, double R) {
    TrialOutcome out;
    PointSet macro = sample_ppp(cfg.lambda1, R, rng);
    PointSet pico = sample_ppp(cfg.lambda2, R, rng);
    while (macro.size() == 0 || pico.size() == 0) {
        if (++out.resamples > 1000)
            throw NumericError("simulate_trial: tiers persistently empty");
        if (macro.size() == 0) macro = sample_ppp(cfg.lambda1, R, rng);
        if (pico.size() == 0) pico = sample_ppp(cfg.lambda2, R, rng);
    }
    const Association assoc = associate(0.0, 0.0, macro, pico, cfg);
    out.tier = assoc.tier;
    out.serving_distance = assoc.serving_distance;

    std::vector<char> muted;  // honored potential-IN macro BSs
    int dof_spent = 0;
    if (params.u_max > 0) {
        // the other scheduled users: independent PPPs per tier, serving
        // distances drawn from the single-user marginal
        struct SchedUser {
            double x, y;
            RequestInterval iv;
        };
        std::vector<SchedUser> sched;
        for (int tier : {1, 2}) {
            const PointSet pts = sample_ppp(cfg.density(tier), R, rng);
            const ServingDistanceDist& yd = tier == 1 ? y1 : y2;
            const double e = cfg.pathloss_exp(tier) / cfg.alpha1;
            const double lo_c = std::pow(cfg.p1 / cfg.power(tier), 1.0 / cfg.alpha1);
            const double hi_f2 =
                std::pow(params.threshold(tier), 2.0 / cfg.alpha1);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double lo = lo_c * std::pow(yd.sample(rng), e);
                const double lo_sq = lo * lo;
                sched.push_back({pts.x[i], pts.y[i], {lo_sq, lo_sq * hi_f2}});
            }
        }
        const auto count_requests = [&](std::size_t b) {
            int k = 0;
            for (const auto& s : sched) {
                const double dx = s.x - macro.x[b];
                const double dy = s.y - macro.y[b];
                if (s.iv.contains_sq(dx * dx + dy * dy)) ++k;
            }
            return k;
        };
        const RequestInterval iv =
            request_interval(assoc.tier, assoc.serving_distance, cfg, params);
        muted.assign(macro.size(), 0);
        for (std::size_t b = 0; b < macro.size(); ++b) {
            const double d2 = macro.x[b] * macro.x[b] + macro.y[b] * macro.y[b];
            if (!iv.contains_sq(d2)) continue;
            ++out.typical_requests;
            const int k_others = count_requests(b);
            // typical is one of k_others + 1 requesters, selection uniform
            std::uniform_int_distribution<int> slot(0, k_others);
            if (slot(rng) < params.u_max) {
                muted[b] = 1;
                ++out.typical_honored;
            }
        }
        if (assoc.tier == 1) {
            out.k0 = count_requests(assoc.serving_index);
            out.u_in0 = std::min(params.u_max, out.k0);
            dof_spent = out.u_in0;
        }
    }

    const int m_dof = assoc.tier == 1 ? cfg.n1 - dof_spent : cfg.n2;
    std::gamma_distribution<double> gain(double(m_dof), 1.0);
    const double sig = cfg.power(assoc.tier) * gain(rng) *
                       std::pow(assoc.serving_distance, -cfg.pathloss_exp(assoc.tier));
    const std::size_t skip_m =
        assoc.tier == 1 ? assoc.serving_index : std::size_t(-1);
    const std::size_t skip_p =
        assoc.tier == 2 ? assoc.serving_index : std::size_t(-1);
    const double interf =
        tier_interference(macro, cfg.p1, cfg.alpha1, skip_m, muted, nullptr,
                          rng) +
        tier_interference(pico, cfg.p2, cfg.alpha2, skip_p, {}, nullptr, rng);
    out.sir = sig / interf;
    return out;
}

TrialOutcome trial_full(const NetworkConfig& cfg, const InParams& params,
                        Rng& rng, double R) {
    TrialOutcome out;
    PointSet macro = sample_ppp(cfg.lambda1, R, rng);
    PointSet pico = sample_ppp(cfg.lambda2, R, rng);
    while (macro.size() == 0 || pico.size() == 0) {
        if (++out.resamples > 1000)
            throw NumericError("simulate_trial: tiers persistently empty");
        if (macro.size() == 0) macro = sample_ppp(cfg.lambda1, R, rng);
        if (pico.size() == 0) pico = sample_ppp(cfg.lambda2, R, rng);
    }
    const PointSet users = sample_ppp(cfg.lambda_u, R, rng);
    const GridIndex gm(macro, R), gp(pico, R);

    const Association assoc = associate_grid(0.0, 0.0, gm, gp, cfg);
    out.tier = assoc.tier;
    out.serving_distance = assoc.serving_distance;

    // associate every other user, bucket by serving BS
    std::vector<Association> ua(users.size());
    std::vector<std::vector<int>> bucket_m(macro.size()), bucket_p(pico.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
        ua[i] = associate_grid(users.x[i], users.y[i], gm, gp, cfg);
        auto& bucket = ua[i].tier == 1 ? bucket_m : bucket_p;
        bucket[ua[i].serving_index].push_back(int(i));
    }
    // one scheduled user per loaded BS; the typical user preempts its server
    auto pick = [&](const std::vector<int>& b) {
        if (b.empty()) return kNoUser;
        std::uniform_int_distribution<std::size_t> u(0, b.size() - 1);
        return b[u(rng)];
    };
    std::vector<int> sched_m(macro.size()), sched_p(pico.size());
    for (std::size_t b = 0; b < macro.size(); ++b) sched_m[b] = pick(bucket_m[b]);
    for (std::size_t b = 0; b < pico.size(); ++b) sched_p[b] = pick(bucket_p[b]);
    (assoc.tier == 1 ? sched_m : sched_p)[assoc.serving_index] = kTypical;

    std::vector<char> muted;
    int dof_spent = 0;
    if (params.u_max > 0) {
        std::vector<std::vector<int>> requesters(macro.size());
        auto file_requests = [&](int uid, int tier, double px, double py,
                                 double y) {
            const RequestInterval iv = request_interval(tier, y, cfg, params);
            gm.for_each_in_annulus(px, py, iv.lo_sq, iv.hi_sq,
                                   [&](int b, double) {
                                       requesters[std::size_t(b)].push_back(uid);
                                   });
        };
        for (std::size_t b = 0; b < macro.size(); ++b) {
            const int s = sched_m[b];
            if (s >= 0)
                file_requests(s, 1, users.x[s], users.y[s],
                              ua[s].serving_distance);
        }
        for (std::size_t b = 0; b < pico.size(); ++b) {
            const int s = sched_p[b];
            if (s >= 0)
                file_requests(s, 2, users.x[s], users.y[s],
                              ua[s].serving_distance);
        }
        file_requests(kTypical, assoc.tier, 0.0, 0.0, assoc.serving_distance);

        muted.assign(macro.size(), 0);
        for (std::size_t b = 0; b < macro.size(); ++b) {
            auto& req = requesters[b];
            if (req.empty()) continue;
            const int take = std::min<int>(params.u_max, int(req.size()));
            for (int t = 0; t < take; ++t) {
                std::uniform_int_distribution<std::size_t> u(t, req.size() - 1);
                std::swap(req[t], req[u(rng)]);
            }
            const bool typ_requested =
                std::find(req.begin(), req.end(), kTypical) != req.end();
            if (typ_requested) ++out.typical_requests;
            for (int t = 0; t < take; ++t)
                if (req[t] == kTypical) {
                    muted[b] = 1;
                    ++out.typical_honored;
                }
            if (assoc.tier == 1 && b == assoc.serving_index) {
                out.k0 = int(req.size());
                out.u_in0 = take;
                dof_spent = take;
            }
        }
        if (assoc.tier == 1 && out.k0 == 0) out.u_in0 = 0;
    }

    const int m_dof = assoc.tier == 1 ? cfg.n1 - dof_spent : cfg.n2;
    std::gamma_distribution<double> gain(double(m_dof), 1.0);
    const double sig =
        cfg.power(assoc.tier) * gain(rng) *
        std::pow(assoc.serving_distance, -cfg.pathloss_exp(assoc.tier));
    std::vector<char> active_m(macro.size()), active_p(pico.size());
    for (std::size_t b = 0; b < macro.size(); ++b)
        active_m[b] = sched_m[b] != kNoUser;
    for (std::size_t b = 0; b < pico.size(); ++b)
        active_p[b] = sched_p[b] != kNoUser;
    const std::size_t skip_m =
        assoc.tier == 1 ? assoc.serving_index : std::size_t(-1);
    const std::size_t skip_p =
        assoc.tier == 2 ? assoc.serving_index : std::size_t(-1);
    const double interf =
        tier_interference(macro, cfg.p1, cfg.alpha1, skip_m, muted, &active_m,
                          rng) +
        tier_interference(pico, cfg.p2, cfg.alpha2, skip_p, {}, &active_p,
                          rng);
    out.sir = sig / interf;
    return out;
}

}  // namespace

TrialOutcome simulate_trial(const NetworkConfig& cfg, const InParams& params,
                            const ServingDistanceDist& y1,
                            const ServingDistanceDist& y2, Rng& rng,
                            const SimOptions& opts) {
    const double R = opts.window_radius > 0.0 ? opts.window_radius
                                              : default_window_radius(cfg);
    if (opts.mode == SchedulingMode::kApprox)
        return trial_approx(cfg, params, y1, y2, rng, R);
    return trial_full(cfg, params, rng, R);
}

namespace {

template <typename PerTrial>
void parallel_trials(long trials, int threads, PerTrial&& per_trial) {
    int nt = threads > 0 ? threads
                         : int(std::max(1u, std::thread::hardware_concurrency()));
    nt = int(std::min<long>(nt, std::max<long>(trials, 1)));
    if (nt <= 1) {
        for (long t = 0; t < trials; ++t) per_trial(t);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            try {
                for (long t = w; t < trials; t += nt) per_trial(t);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<McEstimate> estimate_coverage(const NetworkConfig& cfg,
                                          const InParams& params,
                                          const std::vector<double>& betas,
                                          long trials,
                                          std::uint64_t master_seed,
                                          const SimOptions& opts,
                                          const QuadratureSettings& quad) {
    validate(cfg);
    validate(params, cfg);
    const ServingDistanceDist y1(1, cfg, quad), y2(2, cfg, quad);
    std::vector<std::atomic<long>> counts(betas.size());
    for (auto& c : counts) c.store(0);
    parallel_trials(trials, opts.threads, [&](long t) {
        Rng rng = make_trial_rng(master_seed, std::uint64_t(t));
        const TrialOutcome out = simulate_trial(cfg, params, y1, y2, rng, opts);
        for (std::size_t i = 0; i < betas.size(); ++i)
            if (covered(out, betas[i])) counts[i].fetch_add(1);
    });
    std::vector<McEstimate> est(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
        const double p = double(counts[i].load()) / double(trials);
        est[i].mean = p;
        est[i].ci_halfwidth_95 =
            1.959963985 * std::sqrt(std::max(p * (1.0 - p), 0.0) / trials);
        est[i].trials = trials;
        est[i].seed = master_seed;
    }
    return est;
}

std::vector<TrialOutcome> run_trials(const NetworkConfig& cfg,
                                     const InParams& params, long trials,
                                     std::uint64_t master_seed,
                                     const SimOptions& opts,
                                     const QuadratureSettings& quad) {
    validate(cfg);
    validate(params, cfg);
    const ServingDistanceDist y1(1, cfg, quad), y2(2, cfg, quad);
    std::vector<TrialOutcome> out(static_cast<std::size_t>(trials));
    parallel_trials(trials, opts.threads, [&](long t) {
        Rng rng = make_trial_rng(master_seed, std::uint64_t(t));
        out[std::size_t(t)] = simulate_trial(cfg, params, y1, y2, rng, opts);
    });
    return out;
}

namespace {

double ks_statistic(std::vector<double> v,
                    const std::function<double(double)>& cdf) {
    std::sort(v.begin(), v.end());
    double d = 0.0;
    const double n = double(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max(d, std::abs(f - double(i) / n));
        d = std::max(d, std::abs(double(i + 1) / n - f));
    }
    return d;
}

}  // namespace

ZfbfReport zfbf_oracle(int n1, int u, int samples, std::uint64_t seed) {
    if (u < 0 || u >= n1)
        throw std::invalid_argument("zfbf_oracle: require 0 <= u < n1");
    ZfbfReport rep;
    rep.samples = samples;
    Rng rng = make_trial_rng(seed, 0);
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    auto cn_vector = [&](int n) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = std::complex<double>(nd(rng), nd(rng));
        return v;
    };
    std::vector<double> desired, interferer;
    desired.reserve(samples);
    interferer.reserve(samples);
    for (int s = 0; s < samples; ++s) {
        Eigen::MatrixXcd h(u + 1, n1);  // row 0: own channel; rows 1..u: nulled
        h.row(0) = cn_vector(n1).adjoint();
        for (int i = 1; i <= u; ++i) h.row(i) = cn_vector(n1).adjoint();
        const Eigen::MatrixXcd gram = h * h.adjoint();
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
        if (!lu.isInvertible()) {
            ++rep.singular_resamples;
            --s;
            continue;
        }
        const Eigen::MatrixXcd w = h.adjoint() * lu.inverse();
        const Eigen::VectorXcd f = w.col(0).normalized();
        const Eigen::VectorXcd eff = h * f;
        desired.push_back(std::norm(eff(0)));
        for (int i = 1; i <= u; ++i)
            rep.max_residual = std::max(rep.max_residual, std::abs(eff(i)));
        // an independent non-nulled interferer direction
        interferer.push_back(std::norm(cn_vector(n1).dot(f)));
    }
    rep.ks_desired = ks_statistic(desired, [&](double x) {
        return boost::math::gamma_p(double(n1 - u), x);
    });
    rep.ks_interferer = ks_statistic(
        interferer, [](double x) { return -std::expm1(-x); });
    return rep;
}

}  // namespace hetnet
