#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sieveboot/series.hpp"
#include "sieveboot/spectral.hpp"

namespace sieveboot {

/// Excess kurtosis E xi^4 / (E xi^2)^2 - 3 of an innovation sequence.
struct KurtosisSpec {
    double excess = 0.0;
};

/// (M+1) x (M+1) symmetric matrix, row-major.
struct VarMatrix {
    std::size_t M = 0;
    std::vector<double> entries;

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return entries[i * (M + 1) + j]; }
};

enum class BiasRegime { undersmoothed, optimal };

/// Number of midpoint nodes used by every frequency-domain quadrature below.
inline constexpr std::size_t kQuadratureNodes = 2048;

/// int_0^pi g(lambda) d lambda by the 2048-node midpoint rule.
[[nodiscard]] double integrate_0_pi(const std::function<double(double)>& g);

/// Excess kurtosis of the Wold innovations of X_t = e_t - 2 e_{t-1} as a
/// function of E e^4 / (E e^2)^2: (2/5) r - 6/5.
[[nodiscard]] double ma1_companion_kurtosis(double raw_ratio_e);

/// kappa gamma(h)^2 + sum_k (gamma(k)^2 + gamma(k+h) gamma(k-h)), with the
/// sum over k in Z truncated where |gamma| < 1e-12 gamma(0).
[[nodiscard]] double acvf_asymptotic_variance(const Acvf& acvf, std::size_t h, KurtosisSpec kappa);

/// Bartlett's formula for the sample autocorrelation at lag h:
/// sum_k (1 + 2 rho(h)^2) rho(k)^2 + rho(k-h) rho(k+h) - 4 rho(h) rho(k) rho(k+h).
/// acf holds rho(0..L) with rho(0) = 1.
[[nodiscard]] double bartlett_variance(std::span<const double> acf, std::size_t h);

/// gamma(0) + 2 sum_{h>=1} gamma(h).
[[nodiscard]] double mean_asymptotic_variance(const Acvf& acvf);

/// kappa (int_0^pi phi f)^2 + 2 pi int_0^pi phi^2 f^2.
[[nodiscard]] double integrated_periodogram_variance(const SpectralDensity& f, const WeightFunction& phi,
                                                     KurtosisSpec kappa);

/// 2 pi int_0^pi psi^2 f^2 / (int_0^pi f)^4 with psi = phi int f - int phi f.
/// Throws DomainError when int f = 0.
[[nodiscard]] double ratio_statistic_variance(const SpectralDensity& f, const WeightFunction& phi);

/// Limit of n h Var f_n(lambda) for the kernel estimate with int K = 1:
/// (1 + delta) f^2 (2 pi)^-1 int Kbar^2 where Kbar = 2 pi K is the same kernel
/// scaled to Fourier transform 2 pi at the origin; equivalently
/// (1 + delta) f^2 2 pi int K^2. delta = 1 at lambda = 0 or pi.
[[nodiscard]] double spectral_estimator_variance(double f_lambda, bool at_boundary, const KernelSpec& kernel);

/// 0 when undersmoothed; (1 / 4 pi) f''(lambda) int u^2 K(u) du otherwise.
[[nodiscard]] double spectral_estimator_bias(double second_derivative, const KernelSpec& kernel, BiasRegime regime);

/// Entry (i, j) = kappa gamma(i) gamma(j) + sum_k gamma(k) gamma(k-i+j) + gamma(k+j) gamma(k-i).
[[nodiscard]] VarMatrix vm_matrix(const Acvf& acvf, KurtosisSpec kappa, std::size_t M);

}  // namespace sieveboot
