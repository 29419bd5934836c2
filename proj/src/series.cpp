#include "sieveboot/series.hpp"

#include <algorithm>
#include <cmath>

#include "sieveboot/errors.hpp"
#include "sieveboot/simd.hpp"

namespace sieveboot {

Series::Series(std::vector<double> values, std::string origin, std::optional<std::uint64_t> seed)
    : values_(std::move(values)), origin_(std::move(origin)), seed_(seed) {
    if (values_.empty()) throw DomainError("Series: at least one observation is required");
    for (double v : values_) {
        if (!std::isfinite(v)) throw DomainError("Series: non-finite observation");
    }
}

double Acvf::at(long h) const noexcept {
    const auto lag = static_cast<std::size_t>(h < 0 ? -h : h);
    return lag < gamma.size() ? gamma[lag] : 0.0;
}

double EmpiricalLaw::cdf(double x) const noexcept {
    if (sample_.empty()) return 0.0;
    const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
    return static_cast<double>(it - sample_.begin()) / static_cast<double>(sample_.size());
}

double EmpiricalLaw::mean() const noexcept {
    if (sample_.empty()) return 0.0;
    return compensated_sum(sample_) / static_cast<double>(sample_.size());
}

double EmpiricalLaw::variance() const noexcept {
    if (sample_.size() < 2) return 0.0;
    const double mu = mean();
    double acc = 0.0;
    for (double v : sample_) acc += (v - mu) * (v - mu);
    return acc / static_cast<double>(sample_.size() - 1);
}

double EmpiricalLaw::quantile(double q) const {
    if (sample_.empty()) throw DomainError("quantile: empty law");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile: q must lie in [0, 1]");
    const double pos = q * static_cast<double>(sample_.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sample_.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sample_[lo] + frac * (sample_[hi] - sample_[lo]);
}

double compensated_sum(std::span<const double> x) noexcept {
    double s = 0.0;
    double c = 0.0;
    for (double v : x) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v)) {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    return s + c;
}

double sample_mean(std::span<const double> x) {
    if (x.empty()) throw DomainError("sample_mean: empty series");
    return compensated_sum(x) / static_cast<double>(x.size());
}

double sample_mean(const Series& s) { return sample_mean(s.values()); }

Acvf sample_acvf(std::span<const double> x, std::size_t maxlag, bool centered) {
    const std::size_t n = x.size();
    if (n == 0) throw DomainError("sample_acvf: empty series");
    if (maxlag >= n) throw DomainError("sample_acvf: maxlag must be smaller than the series length");
    std::vector<double> work(x.begin(), x.end());
    if (centered) {
        const double mu = sample_mean(x);
        for (double& v : work) v -= mu;
    }
    Acvf out;
    out.kind = AcvfKind::empirical;
    out.gamma.resize(maxlag + 1);
    const std::span<const double> w(work);
    for (std::size_t h = 0; h <= maxlag; ++h) {
        out.gamma[h] = simd::dot(w.first(n - h), w.subspan(h)) / static_cast<double>(n);
    }
    return out;
}

Acvf sample_acvf(const Series& s, std::size_t maxlag, bool centered) {
    return sample_acvf(s.values(), maxlag, centered);
}

std::vector<double> sample_acf(std::span<const double> x, std::size_t maxlag) {
    const Acvf acvf = sample_acvf(x, maxlag, true);
    const double g0 = acvf.gamma[0];
    if (!(g0 > 0.0)) throw DegenerateSeriesError("sample_acf: series has zero sample variance");
    std::vector<double> rho(acvf.gamma.size());
    for (std::size_t h = 0; h < rho.size(); ++h) rho[h] = acvf.gamma[h] / g0;
    rho[0] = 1.0;
    return rho;
}

std::vector<double> sample_acf(const Series& s, std::size_t maxlag) { return sample_acf(s.values(), maxlag); }

double sample_excess_kurtosis(std::span<const double> x) {
    const double mu = sample_mean(x);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : x) {
        const double d2 = (v - mu) * (v - mu);
        m2 += d2;
        m4 += d2 * d2;
    }
    const auto n = static_cast<double>(x.size());
    m2 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) throw DegenerateSeriesError("sample_excess_kurtosis: zero variance");
    return m4 / (m2 * m2) - 3.0;
}

EmpiricalLaw ecdf(std::span<const double> values) {
    if (values.empty()) throw DomainError("ecdf: empty input");
    EmpiricalLaw law;
    law.sample_.assign(values.begin(), values.end());
    std::sort(law.sample_.begin(), law.sample_.end());
    return law;
}

double kolmogorov_distance(const EmpiricalLaw& f, const EmpiricalLaw& g) {
    if (f.size() == 0 || g.size() == 0) throw DomainError("kolmogorov_distance: empty law");
    const auto a = f.sample();
    const auto b = g.sample();
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double best = 0.0;
    // Walk the merged jump points; after consuming every copy of the current
    // value from both samples the two CDFs are evaluated at that point.
    while (i < a.size() || j < b.size()) {
        double x;
        if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
            x = a[i];
        } else {
            x = b[j];
        }
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return best;
}

double generalized_mean_statistic(std::span<const double> x, const StatisticDescriptor& d) {
    if (d.m == 0 || d.d == 0) throw DomainError("generalized_mean_statistic: m and d must be positive");
    if (x.size() < d.m) throw DomainError("generalized_mean_statistic: series shorter than window length");
    const std::size_t windows = x.size() - d.m + 1;
    std::vector<double> acc(d.d, 0.0);
    std::vector<double> value(d.d, 0.0);
    for (std::size_t t = 0; t < windows; ++t) {
        d.g(x.subspan(t, d.m), value);
        for (std::size_t k = 0; k < d.d; ++k) acc[k] += value[k];
    }
    for (double& a : acc) a /= static_cast<double>(windows);
    return d.f(acc);
}

double generalized_mean_statistic(const Series& s, const StatisticDescriptor& d) {
    return generalized_mean_statistic(s.values(), d);
}

StatisticDescriptor StatisticDescriptor::mean() {
    return {"mean", 1, 1, [](std::span<const double> w, std::span<double> out) { out[0] = w[0]; },
            [](std::span<const double> u) { return u[0]; }};
}

StatisticDescriptor StatisticDescriptor::product_lag1() {
    return {"product-lag-1", 2, 1, [](std::span<const double> w, std::span<double> out) { out[0] = w[0] * w[1]; },
            [](std::span<const double> u) { return u[0]; }};
}

namespace {

StatisticDescriptor::WindowMap lagged_moments(std::size_t h) {
    return [h](std::span<const double> w, std::span<double> out) {
        out[0] = w[0] * w[h];
        out[1] = w[0];
        out[2] = w[0] * w[0];
    };
}

}  // namespace

StatisticDescriptor StatisticDescriptor::acvf_lag(std::size_t h) {
    return {"acvf-gm-lag-" + std::to_string(h), h + 1, 3, lagged_moments(h),
            [](std::span<const double> u) { return u[0] - u[1] * u[1]; }};
}

StatisticDescriptor StatisticDescriptor::acf_lag(std::size_t h) {
    return {"acf-gm-lag-" + std::to_string(h), h + 1, 3, lagged_moments(h),
            [](std::span<const double> u) { return (u[0] - u[1] * u[1]) / (u[2] - u[1] * u[1]); }};
}

}  // namespace sieveboot
