#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/series.hpp"
#include "sieveboot/statistic.hpp"

namespace sieveboot {

enum class OrderMode { fixed, aic_capped };

struct OrderRule {
    OrderMode mode = OrderMode::aic_capped;
    std::optional<std::size_t> fixed_p;

    /// max(1, floor((n / ln n)^{1/4})).
    [[nodiscard]] static std::size_t p_max(std::size_t n);
};

[[nodiscard]] std::string_view to_string(OrderMode m) noexcept;

/// Fixed mode clamps fixed_p to [1, p_max]; aic_capped minimises
/// n ln sigma^2(p) + 2p over [1, p_max] along the Levinson-Durbin path of the
/// centred data. Throws DomainError for n < 20.
[[nodiscard]] std::size_t select_order(const Series& s, const OrderRule& rule);

struct SieveModel {
    ArFit fit;
    /// Centred residuals in time order; the resampling pool.
    std::vector<double> residuals;
    EmpiricalLaw residual_law;
    /// Mean square of the centred residuals, the innovation variance of the
    /// bootstrap process.
    double residual_variance = 0.0;
    std::size_t n = 0;
    std::size_t p = 0;

    [[nodiscard]] SecondOrderModel second_order() const;
};

/// Yule-Walker fit of the selected order on the centred series plus its
/// centred residuals. Throws DegenerateSeriesError for constant series.
[[nodiscard]] SieveModel fit_sieve(const Series& s, const OrderRule& rule);

/// Burn-in max(1000, 50 p) discarded from the AR(p) recursion.
[[nodiscard]] Series generate_bootstrap_series(const SieveModel& m, std::size_t n, std::uint64_t seed);

struct BootstrapResult {
    EmpiricalLaw law;  ///< scale(n) (T*_n - theta*)
    double theta_star = 0.0;
    std::size_t B = 0;
    std::string statistic;
    std::size_t p_used = 0;
};

inline constexpr std::size_t kDefaultBootstrapReplications = 2000;

/// Throws DomainError for B < 100.
[[nodiscard]] BootstrapResult bootstrap_distribution(const Series& s, const Statistic& stat, std::size_t B,
                                                     const OrderRule& rule, std::uint64_t seed);
[[nodiscard]] BootstrapResult bootstrap_distribution(const Series& s, const StatisticDescriptor& d, std::size_t B,
                                                     const OrderRule& rule, std::uint64_t seed);

}  // namespace sieveboot
