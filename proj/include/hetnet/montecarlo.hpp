#pragma once

#include <cstdint>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/in_scheme.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

enum class SchedulingMode {
    kApprox,  // scheduled users sampled as independent PPPs lambda1, lambda2
    kFull,    // user PPP lambda_u, one scheduled user per BS
};

struct SimOptions {
    SchedulingMode mode = SchedulingMode::kApprox;
    double window_radius = 0.0;  // 0 -> default_window_radius(cfg)
    int threads = 0;             // 0 -> hardware_concurrency
};

struct McEstimate {
    double mean = 0.0;
    double ci_halfwidth_95 = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

/// One network snapshot evaluated at the typical user.
struct TrialOutcome {
    int tier = 0;
    double sir = 0.0;
    double serving_distance = 0.0;
    int k0 = 0;                  // requests at the serving macro BS (tier 1)
    int u_in0 = 0;               // IN DoF spent by the serving macro BS
    int typical_requests = 0;    // potential IN macro-BSs of the typical user
    int typical_honored = 0;     // of those, how many selected it
    int resamples = 0;           // empty-tier resample count
};

TrialOutcome simulate_trial(const NetworkConfig& cfg, const InParams& params,
                            const ServingDistanceDist& y1,
                            const ServingDistanceDist& y2, Rng& rng,
                            const SimOptions& opts);

inline bool covered(const TrialOutcome& t, double beta) { return t.sir > beta; }

/// One estimate per beta, all betas evaluated on shared realizations
/// (common random numbers). Deterministic for fixed (master_seed, trials),
/// independent of thread count.
std::vector<McEstimate> estimate_coverage(const NetworkConfig& cfg,
                                          const InParams& params,
                                          const std::vector<double>& betas,
                                          long trials,
                                          std::uint64_t master_seed,
                                          const SimOptions& opts,
                                          const QuadratureSettings& quad);

/// Full trial records, for distribution-level checks.
std::vector<TrialOutcome> run_trials(const NetworkConfig& cfg,
                                     const InParams& params, long trials,
                                     std::uint64_t master_seed,
                                     const SimOptions& opts,
                                     const QuadratureSettings& quad);

/// Explicit complex ZFBF construction: validates the effective-gain
/// distributions that simulate_trial samples directly.
struct ZfbfReport {
    double max_residual = 0.0;       // max_i |g_i^H f| over all samples
    double ks_desired = 0.0;         // KS stat, |h^H f|^2 vs Gamma(n1-u, 1)
    double ks_interferer = 0.0;      // KS stat, |g^H f|^2 vs Gamma(1, 1)
    int singular_resamples = 0;
    int samples = 0;
};

ZfbfReport zfbf_oracle(int n1, int u, int samples, std::uint64_t seed);

}  // namespace hetnet
