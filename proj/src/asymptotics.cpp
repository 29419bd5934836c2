#include "sieveboot/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "sieveboot/errors.hpp"

namespace sieveboot {
namespace {

constexpr double kPi = std::numbers::pi;

// Largest lag whose autocovariance is not negligible.
std::size_t effective_lag(std::span<const double> g) {
    if (g.empty()) return 0;
    const double tol = 1e-12 * std::abs(g[0]);
    std::size_t L = g.size() - 1;
    while (L > 0 && std::abs(g[L]) < tol) --L;
    return L;
}

// Even extension of g(0..L) truncated at L.
struct EvenSequence {
    std::span<const double> g;
    long L;

    double operator()(long k) const noexcept {
        const long a = k < 0 ? -k : k;
        return a <= L ? g[static_cast<std::size_t>(a)] : 0.0;
    }
};

EvenSequence truncated(std::span<const double> g) { return {g, static_cast<long>(effective_lag(g))}; }

}  // namespace

double integrate_0_pi(const std::function<double(double)>& g) {
    const double step = kPi / static_cast<double>(kQuadratureNodes);
    double acc = 0.0;
    for (std::size_t i = 0; i < kQuadratureNodes; ++i) acc += g((static_cast<double>(i) + 0.5) * step);
    return step * acc;
}

double ma1_companion_kurtosis(double raw_ratio_e) {
    if (!(raw_ratio_e >= 1.0)) throw DomainError("ma1_companion_kurtosis: raw fourth-moment ratio must be >= 1");
    return 0.4 * raw_ratio_e - 1.2;
}

double acvf_asymptotic_variance(const Acvf& acvf, std::size_t h, KurtosisSpec kappa) {
    if (acvf.gamma.empty()) throw DomainError("acvf_asymptotic_variance: empty ACVF");
    const auto g = truncated(acvf.gamma);
    const auto hh = static_cast<long>(h);
    const long K = g.L + hh;
    double s = 0.0;
    for (long k = -K; k <= K; ++k) s += g(k) * g(k) + g(k + hh) * g(k - hh);
    return kappa.excess * g(hh) * g(hh) + s;
}

double bartlett_variance(std::span<const double> acf, std::size_t h) {
    if (acf.empty() || acf[0] != 1.0) throw DomainError("bartlett_variance: acf must start with rho(0) = 1");
    const auto r = truncated(acf);
    const auto hh = static_cast<long>(h);
    const double rh = r(hh);
    const long K = r.L + hh;
    double s = 0.0;
    for (long k = -K; k <= K; ++k) {
        s += (1.0 + 2.0 * rh * rh) * r(k) * r(k) + r(k - hh) * r(k + hh) - 4.0 * rh * r(k) * r(k + hh);
    }
    return s;
}

double mean_asymptotic_variance(const Acvf& acvf) {
    if (acvf.gamma.empty()) throw DomainError("mean_asymptotic_variance: empty ACVF");
    const auto g = truncated(acvf.gamma);
    double s = g(0);
    for (long k = 1; k <= g.L; ++k) s += 2.0 * g(k);
    return s;
}

double integrated_periodogram_variance(const SpectralDensity& f, const WeightFunction& phi, KurtosisSpec kappa) {
    const double first = integrate_0_pi([&](double l) { return phi(l) * f(l); });
    const double second = integrate_0_pi([&](double l) {
        const double v = phi(l) * f(l);
        return v * v;
    });
    return kappa.excess * first * first + 2.0 * kPi * second;
}

double ratio_statistic_variance(const SpectralDensity& f, const WeightFunction& phi) {
    const double F = integrate_0_pi(f);
    if (!(std::abs(F) > 0.0)) throw DomainError("ratio_statistic_variance: spectral density integrates to zero");
    const double Phi = integrate_0_pi([&](double l) { return phi(l) * f(l); });
    const double num = integrate_0_pi([&](double l) {
        const double psi = (phi(l) * F - Phi) * f(l);
        return psi * psi;
    });
    return 2.0 * kPi * num / std::pow(F, 4);
}

double spectral_estimator_variance(double f_lambda, bool at_boundary, const KernelSpec& kernel) {
    if (!(f_lambda >= 0.0)) throw DomainError("spectral_estimator_variance: f(lambda) must be nonnegative");
    return (at_boundary ? 2.0 : 1.0) * f_lambda * f_lambda * 2.0 * kPi * kernel.squared_integral();
}

double spectral_estimator_bias(double second_derivative, const KernelSpec& kernel, BiasRegime regime) {
    if (regime == BiasRegime::undersmoothed) return 0.0;
    return second_derivative * kernel.second_moment() / (4.0 * kPi);
}

VarMatrix vm_matrix(const Acvf& acvf, KurtosisSpec kappa, std::size_t M) {
    if (acvf.gamma.empty()) throw DomainError("vm_matrix: empty ACVF");
    const auto g = truncated(acvf.gamma);
    VarMatrix V;
    V.M = M;
    V.entries.assign((M + 1) * (M + 1), 0.0);
    const long K = g.L + static_cast<long>(M);
    for (std::size_t i = 0; i <= M; ++i) {
        for (std::size_t j = i; j <= M; ++j) {
            const auto ii = static_cast<long>(i);
            const auto jj = static_cast<long>(j);
            double s = kappa.excess * g(ii) * g(jj);
            for (long k = -K; k <= K; ++k) s += g(k) * g(k - ii + jj) + g(k + jj) * g(k - ii);
            V.entries[i * (M + 1) + j] = s;
            V.entries[j * (M + 1) + i] = s;
        }
    }
    return V;
}

}  // namespace sieveboot
