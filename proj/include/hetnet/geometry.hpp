#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/rng.hpp"

namespace hetnet {

/// Planar point set inside a disc of window_radius around the origin.
/// Structure-of-arrays so the distance kernels can stream the coordinates.
struct PointSet {
    std::vector<double> x;
    std::vector<double> y;
    double window_radius = 0.0;

    std::size_t size() const { return x.size(); }
    void push_back(double px, double py) {
        x.push_back(px);
        y.push_back(py);
    }
};

struct Association {
    int tier = 0;                  // 1 or 2
    std::size_t serving_index = 0;
    double serving_distance = 0.0;
};

/// Homogeneous PPP on the disc: Poisson(density*pi*R^2) points, i.i.d.
/// uniform positions.
PointSet sample_ppp(double density, double window_radius, Rng& rng);

/// Maximum long-term average received power association; ties go to tier 1.
/// Throws NumericError if either tier is empty.
Association associate(double ux, double uy, const PointSet& macro,
                      const PointSet& pico, const NetworkConfig& cfg);

/// A_j = Pr(typical user associates with tier j). A_1 + A_2 = 1.
double tier_probability(int tier, const NetworkConfig& cfg,
                        const QuadratureSettings& s);

/// f_{Y_j}(y), the serving-distance density conditioned on tier j.
double serving_distance_pdf(int tier, double y, const NetworkConfig& cfg,
                            const QuadratureSettings& s);

/// Default simulation window radius: 25/sqrt(pi*lambda1), enlarged if
/// needed so the expected out-of-window interference is below 1e-3 of the
/// in-window expectation for both tiers.
double default_window_radius(const NetworkConfig& cfg);

/// Cached serving-distance distribution for one tier: pdf, CDF (tabulated
/// antiderivative), inverse-CDF sampling and power moments.
class ServingDistanceDist {
  public:
    ServingDistanceDist(int tier, const NetworkConfig& cfg,
                        const QuadratureSettings& s);

    int tier() const { return tier_; }
    double tier_probability() const { return a_j_; }
    double y_max() const { return y_max_; }

    double pdf(double y) const;
    double cdf(double y) const;
    double quantile(double p) const;
    double sample(Rng& rng) const;

    /// E[Y_j^e] via adaptive quadrature.
    double moment(double e) const;

  private:
    int tier_;
    NetworkConfig cfg_;
    QuadratureSettings quad_;
    double a_j_;
    double y_max_;
    std::vector<double> grid_;  // uniform in y
    std::vector<double> pdf_grid_;
    std::vector<double> cdf_grid_;
};

}  // namespace hetnet
