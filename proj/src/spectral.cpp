#include "sieveboot/spectral.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "sieveboot/errors.hpp"

namespace sieveboot {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe, execution with the new-array interface is.
// Plans are created once per length and kept for the process lifetime.
class R2cPlanCache {
public:
    fftw_plan get(std::size_t n) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(n); it != plans_.end()) return it->second;
        auto* in = fftw_alloc_real(n);
        auto* out = fftw_alloc_complex(n / 2 + 1);
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(n, plan);
        return plan;
    }

    ~R2cPlanCache() {
        for (auto& [_, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, fftw_plan> plans_;
};

R2cPlanCache& plan_cache() {
    static R2cPlanCache cache;
    return cache;
}

double wrap_to_pi(double u) {
    u = std::remainder(u, kTwoPi);
    return u;
}

}  // namespace

WeightFunction WeightFunction::constant(double c) {
    return {"constant", [c](double) { return c; }, 0.0};
}

WeightFunction WeightFunction::cosine(std::size_t h) {
    const auto hh = static_cast<double>(h);
    return {"2cos(" + std::to_string(h) + "*lambda)", [hh](double lambda) { return 2.0 * std::cos(hh * lambda); },
            4.0 * std::max(1.0, hh)};
}

double KernelSpec::kernel(double u) const noexcept {
    if (std::abs(u) > kPi) return 0.0;
    const double r = u / kPi;
    return 3.0 / (4.0 * kPi) * (1.0 - r * r);
}

double KernelSpec::squared_integral() const noexcept { return 3.0 / (5.0 * kPi); }

double KernelSpec::second_moment() const noexcept { return kPi * kPi / 5.0; }

std::vector<double> padded_power_spectrum(std::span<const double> x, std::size_t N) {
    if (N < x.size() || N == 0) throw DomainError("padded_power_spectrum: N must cover the series");
    std::vector<double> in(N, 0.0);
    std::copy(x.begin(), x.end(), in.begin());
    std::vector<std::complex<double>> out(N / 2 + 1);
    fftw_execute_dft_r2c(plan_cache().get(N), in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    std::vector<double> power(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) power[k] = std::norm(out[k]);
    return power;
}

Periodogram periodogram(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("periodogram: at least two observations are required");
    Periodogram I;
    I.n = n;
    I.values = padded_power_spectrum(x, n);
    I.freqs.resize(I.values.size());
    const double norm = 1.0 / (kTwoPi * static_cast<double>(n));
    for (std::size_t j = 0; j < I.values.size(); ++j) {
        I.freqs[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        I.values[j] *= norm;
    }
    return I;
}

Periodogram periodogram(const Series& s) { return periodogram(s.values()); }

Periodogram periodogram_direct(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("periodogram_direct: at least two observations are required");
    // Twiddles indexed by (j * t) mod n keep the phase exact for large j * t.
    std::vector<double> c(n);
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        c[k] = std::cos(w);
        s[k] = std::sin(w);
    }
    Periodogram I;
    I.n = n;
    const std::size_t half = n / 2;
    I.freqs.resize(half + 1);
    I.values.resize(half + 1);
    for (std::size_t j = 0; j <= half; ++j) {
        double re = 0.0;
        double im = 0.0;
        std::size_t idx = 0;
        for (std::size_t t = 0; t < n; ++t) {
            re += x[t] * c[idx];
            im -= x[t] * s[idx];
            idx += j;
            if (idx >= n) idx -= n;
        }
        I.freqs[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        I.values[j] = (re * re + im * im) / (kTwoPi * static_cast<double>(n));
    }
    return I;
}

double integrated_periodogram(std::span<const double> x, const WeightFunction& phi) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("integrated_periodogram: at least two observations are required");
    const std::size_t N = 2 * n;
    const auto power = padded_power_spectrum(x, N);
    const double norm = 1.0 / (kTwoPi * static_cast<double>(n));
    const double step = kTwoPi / static_cast<double>(N);
    double acc = 0.5 * phi(0.0) * power[0] + 0.5 * phi(kPi) * power[n];
    for (std::size_t k = 1; k < n; ++k) acc += phi(step * static_cast<double>(k)) * power[k];
    return step * norm * acc;
}

double integrated_periodogram(const Series& s, const WeightFunction& phi) {
    return integrated_periodogram(s.values(), phi);
}

double ratio_statistic(std::span<const double> x, const WeightFunction& phi) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("ratio_statistic: at least two observations are required");
    const std::size_t N = 2 * n;
    const auto power = padded_power_spectrum(x, N);
    const double step = kTwoPi / static_cast<double>(N);
    double num = 0.5 * phi(0.0) * power[0] + 0.5 * phi(kPi) * power[n];
    double den = 0.5 * power[0] + 0.5 * power[n];
    for (std::size_t k = 1; k < n; ++k) {
        num += phi(step * static_cast<double>(k)) * power[k];
        den += power[k];
    }
    if (!(den > 0.0)) throw DegenerateSeriesError("ratio_statistic: integrated periodogram is zero");
    return num / den;
}

double ratio_statistic(const Series& s, const WeightFunction& phi) { return ratio_statistic(s.values(), phi); }

double kernel_spectral_estimate(const Periodogram& I, const KernelSpec& k, double lambda) {
    if (!(lambda >= 0.0 && lambda <= kPi)) throw DomainError("kernel_spectral_estimate: lambda must lie in [0, pi]");
    if (!(k.bandwidth > 0.0 && k.bandwidth <= kPi)) {
        throw DomainError("kernel_spectral_estimate: bandwidth must lie in (0, pi]");
    }
    const std::size_t n = I.n;
    const double step = kTwoPi / static_cast<double>(n);
    const double reach = kPi * k.bandwidth;
    double acc = 0.0;
    // j runs over the n Fourier frequencies in (-pi, pi]; I(-mu) = I(mu).
    const auto lo = -static_cast<long>((n - 1) / 2);
    const auto hi = static_cast<long>(n / 2);
    for (long j = lo; j <= hi; ++j) {
        const double u = wrap_to_pi(lambda - step * static_cast<double>(j));
        if (std::abs(u) > reach) continue;
        acc += k.scaled(u) * I.values[static_cast<std::size_t>(j < 0 ? -j : j)];
    }
    return step * acc;
}

double kernel_spectral_estimate(std::span<const double> x, const KernelSpec& k, double lambda) {
    return kernel_spectral_estimate(periodogram(x), k, lambda);
}

double kernel_spectral_estimate(const Series& s, const KernelSpec& k, double lambda) {
    return kernel_spectral_estimate(s.values(), k, lambda);
}

double ar_spectral_density(std::span<const double> a, double sigma2, double lambda) {
    std::complex<double> A(1.0, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        A -= a[j] * std::polar(1.0, -static_cast<double>(j + 1) * lambda);
    }
    return sigma2 / (kTwoPi * std::norm(A));
}

double ar_spectral_density(const ArFit& fit, double lambda) { return ar_spectral_density(fit.a, fit.sigma2, lambda); }

double linear_process_spectral_density(std::span<const double> b, double sigma2, double lambda) {
    std::complex<double> B(1.0, 0.0);
    for (std::size_t j = 0; j < b.size(); ++j) B += b[j] * std::polar(1.0, -static_cast<double>(j + 1) * lambda);
    return sigma2 * std::norm(B) / kTwoPi;
}

}  // namespace sieveboot
