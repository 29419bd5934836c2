#pragma once

// Data-parallel inner loops used throughout the library.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The active
// variant is chosen once at startup from the CPU feature set; the explicit
// per-ISA tables are exposed so tests can check equivalence against the
// scalar reference.

#include <cstddef>
#include <span>
#include <string_view>

namespace sieveboot::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    Isa isa;
    /// sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// sum_i x[i]
    double (*sum)(const double* x, std::size_t n);
    /// "Valid" FIR filter: out[i] = sum_k taps[k] * x[i + ntaps - 1 - k]
    /// for i in [0, nx - ntaps]. Requires nx >= ntaps >= 1.
    void (*fir)(const double* x, std::size_t nx, const double* taps, std::size_t ntaps,
                double* out);
    /// y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

[[nodiscard]] const KernelTable& scalar_table() noexcept;
/// nullptr when the variant is not compiled in or the CPU lacks it.
[[nodiscard]] const KernelTable* avx2_table() noexcept;
[[nodiscard]] const KernelTable* neon_table() noexcept;

/// Table selected at startup. SIEVEBOOT_SIMD=scalar in the environment forces
/// the reference path.
[[nodiscard]] const KernelTable& active() noexcept;
[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline double sum(std::span<const double> x) noexcept {
    return active().sum(x.data(), x.size());
}

inline void fir(std::span<const double> x, std::span<const double> taps, std::span<double> out) noexcept {
    active().fir(x.data(), x.size(), taps.data(), taps.size(), out.data());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    active().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

}  // namespace sieveboot::simd
