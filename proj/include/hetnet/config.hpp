#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace hetnet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two-tier network parameters. Tier 1 is the macro tier, tier 2 the pico
/// tier. Powers are linear watts, densities nodes/m^2.
struct NetworkConfig {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda_u = 0.0;  // user density, full-simulation mode only
    double p1 = 0.0;
    double p2 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    int n1 = 0;  // macro antennas
    int n2 = 0;  // pico antennas

    double density(int tier) const { return tier == 1 ? lambda1 : lambda2; }
    double power(int tier) const { return tier == 1 ? p1 : p2; }
    double pathloss_exp(int tier) const { return tier == 1 ? alpha1 : alpha2; }
};

/// Design triple (U, T1, T2) of the interference-nulling scheme.
struct InParams {
    int u_max = 0;
    double t1 = 1.0;
    double t2 = 1.0;

    double threshold(int tier) const { return tier == 1 ? t1 : t2; }
    bool is_non_in() const { return u_max == 0 && t1 == 1.0 && t2 == 1.0; }
};

struct QuadratureSettings {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int max_subdivisions = 15;
};

struct ParamBundle {
    NetworkConfig net;
    InParams in;
    QuadratureSettings quad;
};

/// Throws ConfigError naming the violated rule.
void validate(const NetworkConfig& net);
void validate(const InParams& in, const NetworkConfig& net);
void validate(const QuadratureSettings& quad);

/// Parses the flat-key JSON configuration document. Powers may be given
/// either as linear p1/p2 or as p1_over_p2_db (p2 normalized to 1).
/// Unknown keys are rejected. lambda_u defaults to 10*(lambda1+lambda2).
ParamBundle parse_config(const std::string& text);

/// Canonical JSON rendering; parse_config(render_config(b)) == b.
std::string render_config(const ParamBundle& b);

bool operator==(const NetworkConfig& a, const NetworkConfig& b);
bool operator==(const InParams& a, const InParams& b);
bool operator==(const QuadratureSettings& a, const QuadratureSettings& b);
inline bool operator==(const ParamBundle& a, const ParamBundle& b) {
    return a.net == b.net && a.in == b.in && a.quad == b.quad;
}

}  // namespace hetnet
