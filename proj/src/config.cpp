#include "hetnet/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hetnet {

using nlohmann::json;

void validate(const NetworkConfig& net) {
    if (!(net.lambda1 > 0.0)) throw ConfigError("lambda1 must be positive");
    if (!(net.lambda2 > 0.0)) throw ConfigError("lambda2 must be positive");
    if (!(net.lambda_u > 0.0)) throw ConfigError("lambda_u must be positive");
    if (!(net.p1 > 0.0)) throw ConfigError("p1 must be positive");
    if (!(net.p2 > 0.0)) throw ConfigError("p2 must be positive");
    if (!(net.alpha1 > 2.0)) throw ConfigError("alpha1 must exceed 2");
    if (!(net.alpha2 > 2.0)) throw ConfigError("alpha2 must exceed 2");
    if (net.n2 < 1) throw ConfigError("n2 must be >= 1");
    if (net.n1 <= net.n2) throw ConfigError("n1 must exceed n2");
}

void validate(const InParams& in, const NetworkConfig& net) {
    if (in.u_max < 0) throw ConfigError("u_max must be nonnegative");
    if (in.u_max >= net.n1) throw ConfigError("u_max must be < n1");
    if (!(in.t1 >= 1.0)) throw ConfigError("t1 must be >= 1");
    if (!(in.t2 >= 1.0)) throw ConfigError("t2 must be >= 1");
    if (in.u_max > 0 && (in.t1 <= 1.0 || in.t2 <= 1.0))
        throw ConfigError("t1 and t2 must exceed 1 when u_max > 0");
    if (in.u_max == 0 && (in.t1 != 1.0 || in.t2 != 1.0))
        throw ConfigError("u_max = 0 requires t1 = t2 = 1 (non-IN special case)");
}

void validate(const QuadratureSettings& quad) {
    if (!(quad.rel_tol > 0.0)) throw ConfigError("rel_tol must be positive");
    if (!(quad.abs_tol > 0.0)) throw ConfigError("abs_tol must be positive");
    if (quad.max_subdivisions < 1)
        throw ConfigError("max_subdivisions must be >= 1");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "lambda1", "lambda2",       "lambda_u",       "p1",
    "p2",      "p1_over_p2_db", "alpha1",         "alpha2",
    "n1",      "n2",            "u_max",          "t1",
    "t2",      "rel_tol",       "abs_tol",        "max_subdivisions"};

double require_number(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key: ") + key);
    if (!j[key].is_number())
        throw ConfigError(std::string("key is not a number: ") + key);
    return j[key].get<double>();
}

int require_int(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing key: ") + key);
    if (!j[key].is_number_integer())
        throw ConfigError(std::string("key is not an integer: ") + key);
    return j[key].get<int>();
}

}  // namespace

ParamBundle parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config document: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config document must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!kKnownKeys.count(it.key()))
            throw ConfigError("unknown key: " + it.key());
    }

    ParamBundle b;
    b.net.lambda1 = require_number(j, "lambda1");
    b.net.lambda2 = require_number(j, "lambda2");
    b.net.alpha1 = require_number(j, "alpha1");
    b.net.alpha2 = require_number(j, "alpha2");
    b.net.n1 = require_int(j, "n1");
    b.net.n2 = require_int(j, "n2");

    const bool has_db = j.contains("p1_over_p2_db");
    const bool has_linear = j.contains("p1") || j.contains("p2");
    if (has_db && has_linear)
        throw ConfigError("give either p1/p2 or p1_over_p2_db, not both");
    if (has_db) {
        b.net.p2 = 1.0;
        b.net.p1 = std::pow(10.0, require_number(j, "p1_over_p2_db") / 10.0);
    } else if (has_linear) {
        b.net.p1 = require_number(j, "p1");
        b.net.p2 = require_number(j, "p2");
    } else {
        throw ConfigError("missing key: p1/p2 or p1_over_p2_db");
    }

    // every BS should almost surely have a scheduled user
    b.net.lambda_u = j.contains("lambda_u")
                         ? require_number(j, "lambda_u")
                         : 10.0 * (b.net.lambda1 + b.net.lambda2);

    b.in.u_max = j.contains("u_max") ? require_int(j, "u_max") : 0;
    b.in.t1 = j.contains("t1") ? require_number(j, "t1") : 1.0;
    b.in.t2 = j.contains("t2") ? require_number(j, "t2") : 1.0;

    if (j.contains("rel_tol")) b.quad.rel_tol = require_number(j, "rel_tol");
    if (j.contains("abs_tol")) b.quad.abs_tol = require_number(j, "abs_tol");
    if (j.contains("max_subdivisions"))
        b.quad.max_subdivisions = require_int(j, "max_subdivisions");

    validate(b.net);
    validate(b.in, b.net);
    validate(b.quad);
    return b;
}

std::string render_config(const ParamBundle& b) {
    json j;
    j["lambda1"] = b.net.lambda1;
    j["lambda2"] = b.net.lambda2;
    j["lambda_u"] = b.net.lambda_u;
    j["p1"] = b.net.p1;
    j["p2"] = b.net.p2;
    j["alpha1"] = b.net.alpha1;
    j["alpha2"] = b.net.alpha2;
    j["n1"] = b.net.n1;
    j["n2"] = b.net.n2;
    j["u_max"] = b.in.u_max;
    j["t1"] = b.in.t1;
    j["t2"] = b.in.t2;
    j["rel_tol"] = b.quad.rel_tol;
    j["abs_tol"] = b.quad.abs_tol;
    j["max_subdivisions"] = b.quad.max_subdivisions;
    return j.dump(2);
}

bool operator==(const NetworkConfig& a, const NetworkConfig& b) {
    return a.lambda1 == b.lambda1 && a.lambda2 == b.lambda2 &&
           a.lambda_u == b.lambda_u && a.p1 == b.p1 && a.p2 == b.p2 &&
           a.alpha1 == b.alpha1 && a.alpha2 == b.alpha2 && a.n1 == b.n1 &&
           a.n2 == b.n2;
}

bool operator==(const InParams& a, const InParams& b) {
    return a.u_max == b.u_max && a.t1 == b.t1 && a.t2 == b.t2;
}

bool operator==(const QuadratureSettings& a, const QuadratureSettings& b) {
    return a.rel_tol == b.rel_tol && a.abs_tol == b.abs_tol &&
           a.max_subdivisions == b.max_subdivisions;
}

}  // namespace hetnet
