#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <limits>

#include "hetnet/kernels.hpp"

namespace hetnet::kernels {

MinResult min_dist_sq_avx2(const double* xs, const double* ys, std::size_t n,
                           double px, double py) {
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vidx = _mm256_setzero_pd();
    __m256d vcur = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d vfour = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    const std::size_t n4 = n - (n & 3);
    for (; i < n4; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vpx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vpy);
        const __m256d d2 = _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx));
        const __m256d lt = _mm256_cmp_pd(d2, vmin, _CMP_LT_OQ);
        vmin = _mm256_blendv_pd(vmin, d2, lt);
        vidx = _mm256_blendv_pd(vidx, vcur, lt);
        vcur = _mm256_add_pd(vcur, vfour);
    }
    double lanes[4], idx_lanes[4];
    _mm256_storeu_pd(lanes, vmin);
    _mm256_storeu_pd(idx_lanes, vidx);
    MinResult r{std::numeric_limits<double>::infinity(), 0};
    for (int k = 0; k < 4; ++k) {
        const auto idx = static_cast<std::size_t>(idx_lanes[k]);
        // earliest index wins on exact ties, matching the scalar kernel
        if (lanes[k] < r.dist_sq ||
            (lanes[k] == r.dist_sq && idx < r.index)) {
            r.dist_sq = lanes[k];
            r.index = idx;
        }
    }
    for (; i < n; ++i) {
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

void dist_sq_avx2(const double* xs, const double* ys, std::size_t n, double px,
                  double py, double* out) {
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    std::size_t i = 0;
    const std::size_t n4 = n - (n & 3);
    for (; i < n4; i += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vpx);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vpy);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dx, dx)));
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        out[i] = dx * dx + dy * dy;
    }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n4 = n - (n & 3);
    for (; i < n4; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace hetnet::kernels

#endif  // x86_64
