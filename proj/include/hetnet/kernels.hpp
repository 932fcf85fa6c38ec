#pragma once

#include <cstddef>
#include <string>

namespace hetnet::kernels {

struct MinResult {
    double dist_sq;
    std::size_t index;
};

// Scalar reference kernels.
MinResult min_dist_sq_scalar(const double* xs, const double* ys, std::size_t n,
                             double px, double py);
void dist_sq_scalar(const double* xs, const double* ys, std::size_t n,
                    double px, double py, double* out);
double dot_scalar(const double* a, const double* b, std::size_t n);
// out[i] = (d2[i])^e
void pow_scalar(const double* d2, std::size_t n, double e, double* out);

#if defined(__x86_64__) || defined(_M_X64)
MinResult min_dist_sq_avx2(const double* xs, const double* ys, std::size_t n,
                           double px, double py);
void dist_sq_avx2(const double* xs, const double* ys, std::size_t n, double px,
                  double py, double* out);
double dot_avx2(const double* a, const double* b, std::size_t n);
#endif
#if defined(__aarch64__)
MinResult min_dist_sq_neon(const double* xs, const double* ys, std::size_t n,
                           double px, double py);
void dist_sq_neon(const double* xs, const double* ys, std::size_t n, double px,
                  double py, double* out);
double dot_neon(const double* a, const double* b, std::size_t n);
#endif

// Runtime-dispatched entry points (selected once at startup; scalar when
// the extension is unavailable or HETNET_FORCE_SCALAR is set).
extern MinResult (*min_dist_sq)(const double*, const double*, std::size_t,
                                double, double);
extern void (*dist_sq)(const double*, const double*, std::size_t, double,
                       double, double*);
extern double (*dot)(const double*, const double*, std::size_t);

const std::string& active_backend();
void force_scalar_backend(bool on);

}  // namespace hetnet::kernels
