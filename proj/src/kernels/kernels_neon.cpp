#if defined(__aarch64__)

#include <arm_neon.h>

#include <limits>

#include "hetnet/kernels.hpp"

namespace hetnet::kernels {

MinResult min_dist_sq_neon(const double* xs, const double* ys, std::size_t n,
                           double px, double py) {
    const float64x2_t vpx = vdupq_n_f64(px);
    const float64x2_t vpy = vdupq_n_f64(py);
    float64x2_t vmin = vdupq_n_f64(std::numeric_limits<double>::infinity());
    uint64x2_t vidx = vdupq_n_u64(0);
    uint64x2_t vcur = {0, 1};
    const uint64x2_t vtwo = vdupq_n_u64(2);
    std::size_t i = 0;
    const std::size_t n2 = n - (n & 1);
    for (; i < n2; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vpx);
        const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vpy);
        const float64x2_t d2 = vfmaq_f64(vmulq_f64(dx, dx), dy, dy);
        const uint64x2_t lt = vcltq_f64(d2, vmin);
        vmin = vbslq_f64(lt, d2, vmin);
        vidx = vbslq_u64(lt, vcur, vidx);
        vcur = vaddq_u64(vcur, vtwo);
    }
    double lanes[2];
    std::uint64_t idx_lanes[2];
    vst1q_f64(lanes, vmin);
    vst1q_u64(idx_lanes, vidx);
    MinResult r{std::numeric_limits<double>::infinity(), 0};
    for (int k = 0; k < 2; ++k) {
        const auto idx = static_cast<std::size_t>(idx_lanes[k]);
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

void dist_sq_neon(const double* xs, const double* ys, std::size_t n, double px,
                  double py, double* out) {
    const float64x2_t vpx = vdupq_n_f64(px);
    const float64x2_t vpy = vdupq_n_f64(py);
    std::size_t i = 0;
    const std::size_t n2 = n - (n & 1);
    for (; i < n2; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vpx);
        const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vpy);
        vst1q_f64(out + i, vfmaq_f64(vmulq_f64(dx, dx), dy, dy));
    }
    for (; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        out[i] = dx * dx + dy * dy;
    }
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    const std::size_t n2 = n - (n & 1);
    for (; i < n2; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace hetnet::kernels

#endif  // __aarch64__
