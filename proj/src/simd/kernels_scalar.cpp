#include "kernels_internal.hpp"

namespace sieveboot::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

void fir_scalar(const double* x, std::size_t nx, const double* taps, std::size_t ntaps, double* out) {
    const std::size_t nout = nx - ntaps + 1;
    for (std::size_t i = 0; i < nout; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < ntaps; ++k) acc += taps[k] * x[i + ntaps - 1 - k];
        out[i] = acc;
    }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{Isa::scalar, dot_scalar, sum_scalar, fir_scalar, axpy_scalar};
    return table;
}

}  // namespace sieveboot::simd::detail
