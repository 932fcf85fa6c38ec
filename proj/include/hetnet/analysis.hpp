#pragma once

#include <memory>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/geometry.hpp"
#include "hetnet/in_scheme.hpp"

namespace hetnet {

/// Interferer exclusion radii for a tier-j user at serving distance y:
/// the residual potential-IN annulus [r_1c, r_1o] and the pico exclusion
/// disc radius r_2.
struct ExclusionRadii {
    double r_1c = 0.0;
    double r_1o = 0.0;
    double r_2 = 0.0;
};

struct CoverageResult {
    double a1 = 0.0;
    double a2 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s = 0.0;
    double beta = 0.0;  // linear SIR threshold
};

ExclusionRadii exclusion_radii(int tier, double y, const NetworkConfig& cfg,
                               const InParams& params);

/// Laplace transform of the residual potential-IN macro interference over
/// the annulus [r_1c, r_1o], thinned to density p_cbar*lambda1.
double laplace_1c(double s, double r_1c, double r_1o, const NetworkConfig& cfg,
                  double p_cbar);

/// Laplace transform of interference from a homogeneous PPP outside r.
double laplace_tail(double s, double r, double density, double alpha);

/// Sign-absorbed derivative magnitudes (-s)^n d^n/ds^n L(s); these are the
/// quantities the coverage sums consume directly. n = 0 returns L itself.
double laplace_1c_deriv(int n, double s, double r_1c, double r_1o,
                        const NetworkConfig& cfg, double p_cbar);
double laplace_tail_deriv(int n, double s, double r, double density,
                          double alpha);

/// Analytical coverage/outage engine. Construction precomputes the
/// serving-distance distributions, the IN load and the thinning
/// probability; evaluations are pure and thread-safe afterwards.
class CoverageEngine {
  public:
    CoverageEngine(const NetworkConfig& cfg, const InParams& params,
                   const QuadratureSettings& quad);

    CoverageResult coverage(double beta) const;
    double coverage_macro(double beta) const;
    double coverage_pico(double beta) const;

    /// Conditional macro coverage with the DoF mixture pinned to
    /// u_IN,0 = u (interference statistics unchanged).
    double coverage_macro_given_u(double beta, int u) const;

    /// Outage probabilities evaluated as the positive Erlang-tail series,
    /// accurate in the small-beta regime where 1-coverage cancels.
    /// Throws NumericError if the series truncation cannot reach tolerance
    /// (beta too large for this path).
    double outage_macro(double beta) const;
    double outage_pico(double beta) const;
    double outage(double beta) const;

    double tier_prob(int tier) const;
    double l_bar() const { return load_.total(); }
    double p_cbar() const { return p_cbar_; }
    const ServingDistanceDist& serving_dist(int tier) const {
        return tier == 1 ? *y1_ : *y2_;
    }
    const InParams& params() const { return params_; }
    const NetworkConfig& net() const { return cfg_; }

  private:
    double conditional_sum(int tier, double beta, double y, int terms_from,
                           int terms_to,
                           const std::vector<double>& order_weight) const;

    NetworkConfig cfg_;
    InParams params_;
    QuadratureSettings quad_;
    std::shared_ptr<ServingDistanceDist> y1_;
    std::shared_ptr<ServingDistanceDist> y2_;
    InLoad load_;
    double p_cbar_ = 1.0;
    std::vector<double> u_pmf_;  // u_in0_pmf(0..U)
};

}  // namespace hetnet
