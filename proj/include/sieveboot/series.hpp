#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sieveboot {

/// A finite, real-valued sample path X_1..X_n with its provenance.
class Series {
public:
    Series() = default;
    /// Throws DomainError if values is empty or contains a non-finite entry.
    explicit Series(std::vector<double> values, std::string origin = {},
                    std::optional<std::uint64_t> seed = std::nullopt);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] const std::string& origin() const noexcept { return origin_; }
    [[nodiscard]] std::optional<std::uint64_t> seed() const noexcept { return seed_; }

private:
    std::vector<double> values_;
    std::string origin_;
    std::optional<std::uint64_t> seed_;
};

enum class AcvfKind { empirical, theoretical };

/// Autocovariance sequence gamma(0..L).
struct Acvf {
    std::vector<double> gamma;
    AcvfKind kind = AcvfKind::theoretical;

    [[nodiscard]] std::size_t max_lag() const noexcept { return gamma.empty() ? 0 : gamma.size() - 1; }
    /// gamma(|h|), zero beyond the stored range.
    [[nodiscard]] double at(long h) const noexcept;
};

/// Sorted sample representing a distribution estimate; uniform weights.
class EmpiricalLaw {
public:
    EmpiricalLaw() = default;

    [[nodiscard]] std::span<const double> sample() const noexcept { return sample_; }
    [[nodiscard]] std::size_t size() const noexcept { return sample_.size(); }
    /// Right-continuous CDF: #{v <= x} / N.
    [[nodiscard]] double cdf(double x) const noexcept;
    [[nodiscard]] double mean() const noexcept;
    /// Variance with divisor N - 1.
    [[nodiscard]] double variance() const noexcept;
    /// Type-7 quantile, q in [0, 1].
    [[nodiscard]] double quantile(double q) const;

private:
    friend EmpiricalLaw ecdf(std::span<const double> values);
    std::vector<double> sample_;
};

/// A statistic of generalized-mean form
///   T_n = f( (n-m+1)^-1 sum_t g(X_t, ..., X_{t+m-1}) )
/// with g : R^m -> R^d and f : R^d -> R.
struct StatisticDescriptor {
    using WindowMap = std::function<void(std::span<const double> window, std::span<double> out)>;
    using Reducer = std::function<double(std::span<const double> means)>;

    std::string name;
    std::size_t m = 1;
    std::size_t d = 1;
    WindowMap g;
    Reducer f;

    /// m = 1, g = identity, f = identity.
    static StatisticDescriptor mean();
    /// m = 2, g(x, y) = x * y, f = identity.
    static StatisticDescriptor product_lag1();
    /// Generalized-mean approximation of the centred autocovariance at lag h:
    /// g = (x_1 x_{h+1}, x_1, x_1^2), f(u, v, w) = u - v^2. Differs from
    /// sample_acvf by O_P(1/n).
    static StatisticDescriptor acvf_lag(std::size_t h);
    /// Same window map, f(u, v, w) = (u - v^2) / (w - v^2).
    static StatisticDescriptor acf_lag(std::size_t h);
};

/// Sum with Neumaier compensation.
[[nodiscard]] double compensated_sum(std::span<const double> x) noexcept;

[[nodiscard]] double sample_mean(const Series& s);
[[nodiscard]] double sample_mean(std::span<const double> x);

/// Biased (divisor n) sample autocovariances for lags 0..maxlag. centered
/// subtracts the sample mean first; otherwise c(h) = n^-1 sum X_t X_{t+h}.
[[nodiscard]] Acvf sample_acvf(const Series& s, std::size_t maxlag, bool centered = true);
[[nodiscard]] Acvf sample_acvf(std::span<const double> x, std::size_t maxlag, bool centered = true);

/// rho(h) = gamma(h) / gamma(0) for h = 0..maxlag. Throws DegenerateSeriesError
/// when gamma(0) == 0.
[[nodiscard]] std::vector<double> sample_acf(const Series& s, std::size_t maxlag);
[[nodiscard]] std::vector<double> sample_acf(std::span<const double> x, std::size_t maxlag);

/// m4 / m2^2 - 3 with central sample moments (divisor N).
[[nodiscard]] double sample_excess_kurtosis(std::span<const double> x);

[[nodiscard]] EmpiricalLaw ecdf(std::span<const double> values);

/// sup_x |F(x) - G(x)|, evaluated exactly at the union of jump points.
[[nodiscard]] double kolmogorov_distance(const EmpiricalLaw& f, const EmpiricalLaw& g);

[[nodiscard]] double generalized_mean_statistic(std::span<const double> x, const StatisticDescriptor& d);
[[nodiscard]] double generalized_mean_statistic(const Series& s, const StatisticDescriptor& d);

}  // namespace sieveboot
