#include <cmath>
#include <limits>

#include "hetnet/kernels.hpp"

namespace hetnet::kernels {

MinResult min_dist_sq_scalar(const double* xs, const double* ys, std::size_t n,
                             double px, double py) {
    MinResult r{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        const double d2 = dx * dx + dy * dy;
        if (d2 < r.dist_sq) {
            r.dist_sq = d2;
            r.index = i;
        }
    }
    return r;
}

void dist_sq_scalar(const double* xs, const double* ys, std::size_t n,
                    double px, double py, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        out[i] = dx * dx + dy * dy;
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void pow_scalar(const double* d2, std::size_t n, double e, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(d2[i], e);
}

}  // namespace hetnet::kernels
