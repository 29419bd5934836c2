#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace sieveboot::simd::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

void fir_neon(const double* x, std::size_t nx, const double* taps, std::size_t ntaps, double* out) {
    const std::size_t nout = nx - ntaps + 1;
    std::size_t i = 0;
    for (; i + 2 <= nout; i += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t k = 0; k < ntaps; ++k) {
            acc = vfmaq_n_f64(acc, vld1q_f64(x + i + ntaps - 1 - k), taps[k]);
        }
        vst1q_f64(out + i, acc);
    }
    for (; i < nout; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < ntaps; ++k) acc += taps[k] * x[i + ntaps - 1 - k];
        out[i] = acc;
    }
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_n_f64(vld1q_f64(y + i), vld1q_f64(x + i), alpha));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable& neon_kernels() noexcept {
    static const KernelTable table{Isa::neon, dot_neon, sum_neon, fir_neon, axpy_neon};
    return table;
}

}  // namespace sieveboot::simd::detail
