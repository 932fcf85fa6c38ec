#include <cstdlib>
#include <string>

#include "hetnet/kernels.hpp"

namespace hetnet::kernels {

namespace {

std::string g_backend = "scalar";

bool want_simd() {
    if (std::getenv("HETNET_FORCE_SCALAR") != nullptr) return false;
#if defined(HETNET_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2");
#elif defined(__aarch64__)
    return true;  // NEON is baseline on aarch64
#else
    return false;
#endif
}

}  // namespace

MinResult (*min_dist_sq)(const double*, const double*, std::size_t, double,
                         double) = min_dist_sq_scalar;
void (*dist_sq)(const double*, const double*, std::size_t, double, double,
                double*) = dist_sq_scalar;
double (*dot)(const double*, const double*, std::size_t) = dot_scalar;

void force_scalar_backend(bool on) {
    if (on || !want_simd()) {
        min_dist_sq = min_dist_sq_scalar;
        dist_sq = dist_sq_scalar;
        dot = dot_scalar;
        g_backend = "scalar";
        return;
    }
#if defined(HETNET_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
    min_dist_sq = min_dist_sq_avx2;
    dist_sq = dist_sq_avx2;
    dot = dot_avx2;
    g_backend = "avx2";
#elif defined(__aarch64__)
    min_dist_sq = min_dist_sq_neon;
    dist_sq = dist_sq_neon;
    dot = dot_neon;
    g_backend = "neon";
#endif
}

namespace {
struct Init {
    Init() { force_scalar_backend(false); }
} g_init;
}  // namespace

const std::string& active_backend() { return g_backend; }

}  // namespace hetnet::kernels
