#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sieveboot/rng.hpp"
#include "sieveboot/series.hpp"

namespace sieveboot {

enum class InnovationFamily { gaussian, centered_exponential, centered_uniform };

/// i.i.d. innovations with mean 0 and variance scale^2.
struct InnovationSpec {
    InnovationFamily family = InnovationFamily::gaussian;
    double scale = 1.0;

    /// E e^4 / sigma^4: 3, 9 and 9/5 respectively.
    [[nodiscard]] double raw_fourth_moment_ratio() const noexcept;
    [[nodiscard]] double excess_kurtosis() const noexcept { return raw_fourth_moment_ratio() - 3.0; }
    [[nodiscard]] double variance() const noexcept { return scale * scale; }
};

[[nodiscard]] std::string_view to_string(InnovationFamily f) noexcept;
/// Throws DomainError for an unknown name.
[[nodiscard]] InnovationFamily innovation_family_from_string(std::string_view name);

/// X_t = e_t + sum_{j=1}^q b_j e_{t-j}.
struct LinearModel {
    std::vector<double> b;
    InnovationSpec innovations;
};

/// X_t = sum_j a_j X_{t-j} + e_t.
struct ArModel {
    std::vector<double> a;
    InnovationSpec innovations;
};

/// X_t = sigma_t Z_t, sigma_t^2 = omega + alpha1 X_{t-1}^2, Z_t ~ N(0, 1).
struct Arch1Model {
    double omega = 1.0;
    double alpha1 = 0.0;

    [[nodiscard]] double variance() const noexcept { return omega / (1.0 - alpha1); }
};

struct LinearPath {
    Series x;
    Series e;  ///< innovation e_t aligned with x_t
};

/// Noninvertible MA(1) X_t = e_t - 2 e_{t-1} with its Wold innovations
///   ve_t = e_t - (3/2) sum_{j>=1} (1/2)^{j-1} e_{t-j},
/// so that X_t = ve_t - ve_{t-1} / 2 and Var(ve) = 4 Var(e).
struct Ma1Path {
    Series x;
    Series e;
    Series ve;
    /// Leading entries of ve computed from a partial filter.
    std::size_t burnin = 0;
};

/// Truncation of the geometric filter defining ve.
inline constexpr std::size_t kMa1FilterLength = 60;

/// max(1000, 50 * order).
[[nodiscard]] std::size_t default_burnin(std::size_t order) noexcept;

[[nodiscard]] std::vector<double> draw_innovations(const InnovationSpec& spec, std::size_t n, std::uint64_t seed);
/// Draws from an existing engine.
void fill_innovations(const InnovationSpec& spec, Engine& engine, std::span<double> out);

[[nodiscard]] LinearPath simulate_linear(const LinearModel& model, std::size_t n, std::uint64_t seed);

/// Throws StabilityError when the AR polynomial has a root in the closed unit
/// disk.
[[nodiscard]] Series simulate_ar(const ArModel& model, std::size_t n, std::uint64_t seed, std::size_t burnin);

[[nodiscard]] Ma1Path ma1_example(std::size_t n, std::uint64_t seed, const InnovationSpec& innovations);

/// Filter taps (1, -3/2, -3/4, ...) mapping e to ve, length kMa1FilterLength + 1.
[[nodiscard]] std::vector<double> ma1_wold_filter();

/// Throws DomainError unless 3 alpha1^2 < 1 and omega > 0.
[[nodiscard]] Series simulate_arch1(const Arch1Model& model, std::size_t n, std::uint64_t seed, std::size_t burnin);

enum class ModelFamily { linear, ar, arch1 };

[[nodiscard]] std::string_view to_string(ModelFamily f) noexcept;

/// Serializable description of any supported data-generating process.
/// coefficients holds b (linear), a (ar) or (omega, alpha1) (arch1).
struct ModelSpec {
    ModelFamily family = ModelFamily::linear;
    std::vector<double> coefficients;
    InnovationSpec innovation;
    std::size_t burnin = 1000;

    [[nodiscard]] static ModelSpec ma1_example(InnovationFamily family);
    /// True for the linear model b = (-2).
    [[nodiscard]] bool is_ma1_example() const noexcept;
    [[nodiscard]] Arch1Model arch1() const;
};

/// One sample path of length n from the model.
[[nodiscard]] Series simulate(const ModelSpec& model, std::size_t n, std::uint64_t seed);

/// AR recursion x_t = sum_k a_k x_{t-k} + e_t from zero initial state; returns
/// the full path (same length as e).
[[nodiscard]] std::vector<double> ar_filter(std::span<const double> a, std::span<const double> e);

}  // namespace sieveboot
