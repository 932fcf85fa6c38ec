#include "hetnet/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

namespace hetnet {

double beta_upper(double a, double b, double z) {
    if (!(a > 0.0)) throw std::domain_error("beta_upper: a must be > 0");
    if (!(b > 0.0)) throw std::domain_error("beta_upper: b must be > 0");
    if (!(z > -1e-12) || !(z < 1.0 + 1e-12))
        throw std::domain_error("beta_upper: z must lie in (0,1)");
    // upstream formulas can round z onto (or past) the endpoints
    z = std::min(std::max(z, 1e-300), 1.0 - 1e-16);
    // int_z^1 u^(a-1)(1-u)^(b-1) du is the unnormalized complement of the
    // incomplete beta function
    return boost::math::betac(a, b, z);
}

double gamma_upper_tail(int shape, double x) {
    if (shape < 1) throw std::domain_error("gamma_upper_tail: shape must be >= 1");
    if (x < 0.0) throw std::domain_error("gamma_upper_tail: x must be >= 0");
    // Erlang tail: e^{-x} sum_{n<shape} x^n/n!
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < shape; ++n) {
        term *= x / n;
        sum += term;
    }
    return std::exp(-x) * sum;
}

double semi_infinite_integral(const std::function<double(double)>& f,
                              const QuadratureSettings& s) {
    boost::math::quadrature::exp_sinh<double> integrator(s.max_subdivisions);
    double error = 0.0;
    double l1 = 0.0;
    double value;
    try {
        value = integrator.integrate(f, s.rel_tol, &error, &l1);
    } catch (const std::exception& e) {
        throw NumericError(std::string("semi_infinite_integral: ") + e.what());
    }
    if (!std::isfinite(value))
        throw NumericError("semi_infinite_integral: nonfinite result");
    if (error > 100.0 * (s.rel_tol * std::abs(l1) + s.abs_tol))
        throw NumericError("semi_infinite_integral: did not converge");
    return value;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSettings& s) {
    if (hi <= lo) return 0.0;
    double error = 0.0;
    double value;
    try {
        value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            f, lo, hi, s.max_subdivisions, s.rel_tol, &error);
    } catch (const std::exception& e) {
        throw NumericError(std::string("integrate: ") + e.what());
    }
    if (!std::isfinite(value)) throw NumericError("integrate: nonfinite result");
    return value;
}

}  // namespace hetnet
