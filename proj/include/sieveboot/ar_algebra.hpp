#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sieveboot/series.hpp"

namespace sieveboot {

/// Order-p autoregression X_t = sum_k a[k-1] X_{t-k} + e_t with innovation
/// variance sigma2.
struct ArFit {
    std::size_t p = 0;
    std::vector<double> a;
    double sigma2 = 0.0;
    AcvfKind source = AcvfKind::theoretical;
};

/// Power-series inverse 1 / A(z) = sum_j alpha_j z^j of A(z) = 1 - sum a_k z^k.
struct MaInversion {
    std::vector<double> alpha;  ///< alpha[0] = 1, ..., alpha[L]
    std::size_t L = 0;
    /// rho^L with rho the largest modulus of 1/root; a geometric envelope for
    /// |alpha_L| up to a polynomial factor.
    double decay_bound = 0.0;
};

/// Yule-Walker fit of order p via the Levinson-Durbin recursion.
///
/// Throws DegenerateSeriesError when gamma(0) == 0 and ConditioningError when
/// a prediction-variance iterate drops below 1e-12 * gamma(0).
[[nodiscard]] ArFit yule_walker_fit(const Acvf& acvf, std::size_t p);

/// Innovation variances sigma^2(0), ..., sigma^2(p) of the nested Yule-Walker
/// fits, as produced along the Levinson-Durbin recursion.
[[nodiscard]] std::vector<double> levinson_variance_path(const Acvf& acvf, std::size_t p);

/// The exact AR(infinity) coefficients a_j = -(1/2)^j, j = 1..L, of the
/// noninvertible MA(1) X_t = e_t - 2 e_{t-1} written in Wold form.
[[nodiscard]] std::vector<double> true_ar_coefficients_ma1(std::size_t L = 60);

/// gamma(0) - sum_k a_k gamma(k).
[[nodiscard]] double innovation_variance_limit(const Acvf& acvf, std::span<const double> a);

[[nodiscard]] MaInversion invert_ar_polynomial(std::span<const double> a, std::size_t L);

/// Smallest L with a geometric bound on |alpha_L| below 1e-12, capped at 1e4.
[[nodiscard]] std::size_t default_inversion_length(std::span<const double> a);

/// Roots of A(z) = 1 - sum a_k z^k, from the eigenvalues of the AR companion
/// matrix (trailing zero coefficients are dropped).
[[nodiscard]] std::vector<std::complex<double>> ar_polynomial_roots(std::span<const double> a);

/// min |A(z)| over |z| <= radius. Zero when a root lies in the closed disk;
/// otherwise the boundary minimum, located through the critical points of
/// |A(r e^{i theta})|^2.
[[nodiscard]] double min_modulus_on_disk(std::span<const double> a, double radius);

struct BaxterGap {
    double lhs = 0.0;  ///< sum_{k<=p} (1+k)^r |a_k(p) - a_k|
    double rhs = 0.0;  ///< sum_{k>p} (1+k)^r |a_k|
};

[[nodiscard]] BaxterGap baxter_gap(const ArFit& fit, std::span<const double> a_true, int r);

/// Centered residuals X_t - sum_j a_j X_{t-j}, t = p+1..n; exact mean zero.
[[nodiscard]] std::vector<double> residuals(std::span<const double> x, const ArFit& fit);
[[nodiscard]] std::vector<double> residuals(const Series& s, const ArFit& fit);

}  // namespace sieveboot
