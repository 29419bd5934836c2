#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sieveboot/dgp.hpp"
#include "sieveboot/series.hpp"
#include "sieveboot/statistic.hpp"

namespace sieveboot {

enum class InnovationSource { exact_ma1_filter, residual_resample, parametric };

[[nodiscard]] std::string_view to_string(InnovationSource s) noexcept;

/// Companion autoregression X~_t = sum_j a_j X~_{t-j} + eps~_t with i.i.d.
/// eps~ sharing the marginal law of the Wold innovations of the original
/// process.
struct CompanionSpec {
    std::vector<double> a;
    InnovationSource source = InnovationSource::parametric;
    /// Centred pool resampled i.i.d. (exact_ma1_filter, residual_resample).
    std::vector<double> record;
    /// Innovation law for the parametric source.
    InnovationSpec parametric;
    std::size_t burnin = 1000;

    /// Variance of one innovation draw (the pool variance with divisor N for
    /// resampled sources).
    [[nodiscard]] double innovation_variance() const;
    [[nodiscard]] SecondOrderModel second_order() const;
};

/// Length of the ve record behind the exact MA(1) companion.
inline constexpr std::size_t kCompanionRecordLength = 1'000'000;

/// Companion of X_t = e_t - 2 e_{t-1}: a_j = -(1/2)^j truncated at 60 and a
/// centred record of Wold innovations ve simulated with e ~ `innovations`.
[[nodiscard]] CompanionSpec ma1_companion(const InnovationSpec& innovations, std::uint64_t seed,
                                          std::size_t record_length = kCompanionRecordLength);

/// Companion for any supported model: the MA(1) example uses the exact filter;
/// invertible linear and causal AR models are their own companions with
/// parametric innovations; ARCH(1) is white noise, so the companion resamples
/// a long simulated path. Noninvertible linear models other than the worked
/// example throw ConfigError.
[[nodiscard]] CompanionSpec companion_for(const ModelSpec& model, std::uint64_t seed);

/// gamma(h) = sigma2 sum_j alpha_j alpha_{j+h}, h = 0..maxlag, with alpha the
/// power-series inverse of the AR polynomial.
[[nodiscard]] Acvf ar_model_acvf(std::span<const double> a, double sigma2, std::size_t maxlag);

[[nodiscard]] Series build_companion(const CompanionSpec& spec, std::size_t n, std::uint64_t seed);

struct OracleResult {
    EmpiricalLaw law;  ///< scale(n) (T~_n - theta~)
    std::size_t M = 0;
    double theta_tilde = 0.0;
};

/// Throws DomainError for M < 200.
[[nodiscard]] OracleResult companion_distribution(const CompanionSpec& spec, const Statistic& stat, std::size_t n,
                                                  std::size_t M, std::uint64_t seed);

}  // namespace sieveboot
