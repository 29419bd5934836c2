#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/series.hpp"

namespace sieveboot {

/// I_n(lambda_j) = (2 pi n)^-1 |sum_t X_t e^{-i lambda_j t}|^2 at the Fourier
/// frequencies lambda_j = 2 pi j / n, j = 0..floor(n/2).
struct Periodogram {
    std::size_t n = 0;
    std::vector<double> freqs;
    std::vector<double> values;
};

/// Weight function phi on [0, pi] for integrated periodograms.
struct WeightFunction {
    std::string name;
    std::function<double(double)> phi;
    /// Upper bound on the total variation of phi over [0, pi].
    double variation_bound = 0.0;

    [[nodiscard]] double operator()(double lambda) const { return phi(lambda); }

    static WeightFunction constant(double c);
    /// phi(lambda) = 2 cos(lambda h); integrates I_n to the lag-h autocovariance.
    static WeightFunction cosine(std::size_t h);
};

enum class KernelShape { epanechnikov_pi };

/// Smoothing kernel normalised to integrate to one over its support [-pi, pi];
/// K_h(u) = K(u / h) / h.
struct KernelSpec {
    KernelShape shape = KernelShape::epanechnikov_pi;
    double bandwidth = 0.3;

    /// K(u) = 3 / (4 pi) (1 - (u / pi)^2) on [-pi, pi].
    [[nodiscard]] double kernel(double u) const noexcept;
    [[nodiscard]] double scaled(double u) const noexcept { return kernel(u / bandwidth) / bandwidth; }
    /// int K^2 = 3 / (5 pi).
    [[nodiscard]] double squared_integral() const noexcept;
    /// int u^2 K(u) du = pi^2 / 5.
    [[nodiscard]] double second_moment() const noexcept;
};

/// Spectral density as a function of frequency.
using SpectralDensity = std::function<double(double)>;

/// FFT-based periodogram (FFTW).
[[nodiscard]] Periodogram periodogram(std::span<const double> x);
[[nodiscard]] Periodogram periodogram(const Series& s);
/// O(n^2) direct DFT reference with the same output layout.
[[nodiscard]] Periodogram periodogram_direct(std::span<const double> x);

/// |sum_t x_t e^{-i 2 pi k t / N}|^2 for k = 0..N/2 with x zero-padded to
/// length N >= x.size().
[[nodiscard]] std::vector<double> padded_power_spectrum(std::span<const double> x, std::size_t N);

/// M(I_n, phi) = int_0^pi phi(lambda) I_n(lambda) d lambda.
///
/// Quadrature: trapezoid rule on the Fourier grid of the series zero-padded to
/// length 2n, i.e. nodes 2 pi k / (2n). I_n is a trigonometric polynomial of
/// degree n - 1, so the rule is exact whenever phi is a trigonometric
/// polynomial of degree <= n; in particular M(I_n, 2 cos(h .)) equals the
/// non-centred sample autocovariance c(h).
[[nodiscard]] double integrated_periodogram(std::span<const double> x, const WeightFunction& phi);
[[nodiscard]] double integrated_periodogram(const Series& s, const WeightFunction& phi);

/// R(I_n, phi) = M(I_n, phi) / M(I_n, 1). Throws DegenerateSeriesError for a
/// zero denominator.
[[nodiscard]] double ratio_statistic(std::span<const double> x, const WeightFunction& phi);
[[nodiscard]] double ratio_statistic(const Series& s, const WeightFunction& phi);

/// f_n(lambda) = (2 pi / n) sum_j K_h(lambda - mu_j) I_n(mu_j) over the n
/// Fourier frequencies mu_j in (-pi, pi], with I_n extended evenly and the
/// kernel argument wrapped onto the circle.
[[nodiscard]] double kernel_spectral_estimate(std::span<const double> x, const KernelSpec& k, double lambda);
[[nodiscard]] double kernel_spectral_estimate(const Series& s, const KernelSpec& k, double lambda);
/// Same estimate from a precomputed periodogram.
[[nodiscard]] double kernel_spectral_estimate(const Periodogram& I, const KernelSpec& k, double lambda);

/// (sigma2 / 2 pi) |1 - sum_j a_j e^{-i j lambda}|^-2.
[[nodiscard]] double ar_spectral_density(std::span<const double> a, double sigma2, double lambda);
[[nodiscard]] double ar_spectral_density(const ArFit& fit, double lambda);

/// (sigma2 / 2 pi) |1 + sum_j b_j e^{-i j lambda}|^2.
[[nodiscard]] double linear_process_spectral_density(std::span<const double> b, double sigma2, double lambda);

}  // namespace sieveboot
