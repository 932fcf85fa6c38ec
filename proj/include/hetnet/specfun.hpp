#pragma once

#include <functional>

#include "hetnet/config.hpp"

namespace hetnet {

/// B'(a,b,z) = int_z^1 u^(a-1) (1-u)^(b-1) du, a > 0, b > 0, 0 < z < 1.
/// z is clamped to [1e-300, 1-1e-16]; the integrable endpoint singularity
/// at u = 1 (0 < b < 1) is handled exactly.
double beta_upper(double a, double b, double z);

/// Pr(G > x) for G ~ Gamma(shape, 1), integer shape (Erlang tail sum).
double gamma_upper_tail(int shape, double x);

/// Adaptive integral of f over [0, inf). f must decay at least
/// exponentially; throws NumericError on nonconvergence.
double semi_infinite_integral(const std::function<double(double)>& f,
                              const QuadratureSettings& s);

/// Adaptive integral over the finite interval [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSettings& s);

}  // namespace hetnet
