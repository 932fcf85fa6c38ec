#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "hetnet/specfun.hpp"

using namespace hetnet;

namespace {

// adaptive Simpson, independent of the quadrature backends under test
double simpson(const std::function<double(double)>& f, double lo, double hi,
               double flo, double fmid, double fhi, double whole, double tol,
               int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = f(0.5 * (lo + mid));
    const double rm = f(0.5 * (mid + hi));
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * lm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * rm + fhi);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, lo, mid, flo, lm, fmid, left, tol / 2.0, depth - 1) +
           simpson(f, mid, hi, fmid, rm, fhi, right, tol / 2.0, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return simpson(f, lo, hi, flo, fmid, fhi, whole, tol, 48);
}

// oracle for int_z^1 u^(a-1)(1-u)^(b-1) du. The u = 1 endpoint is singular
// when b < 1; the substitution t = (1-u)^b removes it exactly.
double beta_upper_oracle(double a, double b, double z) {
    if (b >= 1.0) {
        return adaptive_simpson(
            [&](double u) {
                return std::pow(u, a - 1.0) * std::pow(1.0 - u, b - 1.0);
            },
            z, 1.0, 1e-13);
    }
    const double hi = std::pow(1.0 - z, b);
    return adaptive_simpson(
               [&](double t) {
                   const double u = 1.0 - std::pow(t, 1.0 / b);
                   return std::pow(u, a - 1.0);
               },
               0.0, hi, 1e-13) /
           b;
}

}  // namespace

TEST_CASE("beta_upper: closed-form spot checks") {
    CHECK(beta_upper(1.0, 1.0, 0.3) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(beta_upper(2.0, 1.0, 0.3) ==
          doctest::Approx((1.0 - 0.09) / 2.0).epsilon(1e-12));
    // int_z^1 (1-u)^(b-1) du = (1-z)^b / b
    CHECK(beta_upper(1.0, 0.4, 0.25) ==
          doctest::Approx(std::pow(0.75, 0.4) / 0.4).epsilon(1e-12));
    // full beta function at z -> 0
    CHECK(beta_upper(2.5, 3.5, 1e-300) ==
          doctest::Approx(std::exp(std::lgamma(2.5) + std::lgamma(3.5) -
                                   std::lgamma(6.0)))
              .epsilon(1e-12));
    // z = 1 clamps to 1 - 1e-16; with b = 0.5 the remaining mass is
    // ~2*(1e-16)^0.5 = 2e-8, vanishing but not exactly zero
    CHECK(beta_upper(2.0, 0.5, 1.0) >= 0.0);
    CHECK(beta_upper(2.0, 0.5, 1.0) < 1e-7);
}

TEST_CASE("beta_upper matches integration oracle on random arguments") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ua(0.15, 6.0);
    std::uniform_real_distribution<double> ub(0.05, 4.0);
    std::uniform_real_distribution<double> uz(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double a = ua(gen), b = ub(gen), z = uz(gen);
        const double got = beta_upper(a, b, z);
        const double want = beta_upper_oracle(a, b, z);
        // relative agreement down to the oracle's own absolute floor
        CHECK(std::abs(got - want) <= 1e-9 * want + 5e-13);
    }
}

TEST_CASE("beta_upper additivity over adjacent intervals") {
    // B'(a,b,z1) - B'(a,b,z2) = int_{z1}^{z2}, z1 < z2 < 1 (smooth interior)
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ua(0.2, 5.0);
    std::uniform_real_distribution<double> ub(0.1, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double a = ua(gen), b = ub(gen);
        const double z1 = 0.2, z2 = 0.7;
        const double piece = adaptive_simpson(
            [&](double u) {
                return std::pow(u, a - 1.0) * std::pow(1.0 - u, b - 1.0);
            },
            z1, z2, 1e-13);
        CHECK(beta_upper(a, b, z1) - beta_upper(a, b, z2) ==
              doctest::Approx(piece).epsilon(1e-9));
    }
}

TEST_CASE("beta_upper rejects out-of-domain arguments") {
    CHECK_THROWS(beta_upper(0.0, 1.0, 0.5));
    CHECK_THROWS(beta_upper(1.0, -0.5, 0.5));
    CHECK_THROWS(beta_upper(1.0, 1.0, 1.5));
    CHECK_THROWS(beta_upper(1.0, 1.0, -0.5));
}

TEST_CASE("gamma_upper_tail matches the gamma survival function") {
    for (int shape : {1, 2, 5, 10, 18}) {
        for (double x : {0.0, 0.3, 1.0, 4.0, 15.0, 40.0}) {
            // relative-precision oracle (different algorithm family than the
            // Erlang sum under test); valid down to the e^-40 deep tail
            const double want = boost::math::gamma_q(double(shape), x);
            CHECK(std::abs(gamma_upper_tail(shape, x) - want) <=
                  1e-12 * want);
            // direct integration of the density as a second, coarser oracle
            if (want > 1e-6) {
                const double lognorm = std::lgamma(double(shape));
                const double integ = adaptive_simpson(
                    [&](double t) {
                        return std::exp((shape - 1) *
                                            std::log(std::max(t, 1e-300)) -
                                        t - lognorm);
                    },
                    x, x + 60.0 + 4.0 * shape, 1e-14);
                CHECK(std::abs(gamma_upper_tail(shape, x) - integ) <=
                      1e-8 * integ);
            }
        }
    }
    CHECK(gamma_upper_tail(3, 0.0) == 1.0);
    CHECK_THROWS(gamma_upper_tail(0, 1.0));
    CHECK_THROWS(gamma_upper_tail(2, -1.0));
}

TEST_CASE("semi_infinite_integral on known integrals") {
    const QuadratureSettings s{};
    CHECK(semi_infinite_integral([](double t) { return std::exp(-t); }, s) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // integrands must stay finite at the rule's huge-t probe points
    CHECK(semi_infinite_integral(
              [](double t) {
                  return t > 700.0 ? 0.0 : t * t * t * std::exp(-t);
              },
              s) == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(semi_infinite_integral([](double t) { return std::exp(-t * t); },
                                 s) ==
          doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("integrate on known finite integrals") {
    const QuadratureSettings s{};
    CHECK(integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0,
                    s) == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, s) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0, s) == 0.0);
    CHECK(integrate([](double) { return 1.0; }, 3.0, 2.0, s) == 0.0);
}
