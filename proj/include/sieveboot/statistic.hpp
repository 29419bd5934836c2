#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sieveboot/series.hpp"
#include "sieveboot/spectral.hpp"

namespace sieveboot {

/// Second-order description of a stationary model: everything the built-in
/// statistics need to compute their population value.
struct SecondOrderModel {
    double mean = 0.0;
    std::function<Acvf(std::size_t maxlag)> acvf;
    SpectralDensity density;

    /// Causal AR model with innovation variance sigma2.
    [[nodiscard]] static SecondOrderModel from_ar(std::vector<double> a, double sigma2);
    /// X_t = e_t + sum b_j e_{t-j} with Var e = sigma2.
    [[nodiscard]] static SecondOrderModel from_linear(std::vector<double> b, double sigma2);
    [[nodiscard]] static SecondOrderModel white_noise(double variance);
};

/// A real-valued statistic T_n of a sample path together with its population
/// value theta and the root-n type scaling used for its law.
class Statistic {
public:
    enum class Kind { mean, acvf, acf, ratio, spectral_density, generalized_mean };

    [[nodiscard]] static Statistic mean();
    /// Exact centred sample autocovariance at lag h.
    [[nodiscard]] static Statistic acvf(std::size_t h);
    [[nodiscard]] static Statistic acf(std::size_t h);
    /// R(I_n, phi) with phi(lambda) = 2 cos(h lambda).
    [[nodiscard]] static Statistic ratio_cosine(std::size_t h);
    [[nodiscard]] static Statistic spectral_density(double lambda, KernelSpec kernel);
    /// Generalized-mean statistic. The population value is analytic for the
    /// built-in descriptors and otherwise comes from auxiliary simulation.
    [[nodiscard]] static Statistic from_descriptor(StatisticDescriptor d);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t lag() const noexcept { return lag_; }
    [[nodiscard]] double frequency() const noexcept { return frequency_; }
    [[nodiscard]] const KernelSpec& kernel() const noexcept { return kernel_; }
    [[nodiscard]] const std::optional<StatisticDescriptor>& descriptor() const noexcept { return descriptor_; }

    [[nodiscard]] double evaluate(std::span<const double> x) const;
    [[nodiscard]] double evaluate(const Series& s) const { return evaluate(s.values()); }

    /// theta for the given model; nullopt when no closed form is available.
    [[nodiscard]] std::optional<double> model_value(const SecondOrderModel& model) const;

    /// sqrt(n), or sqrt(n h) for kernel spectral estimates.
    [[nodiscard]] double scale(std::size_t n) const;

    /// Smallest admissible sample length.
    [[nodiscard]] std::size_t min_length() const noexcept;

private:
    Kind kind_ = Kind::mean;
    std::string name_ = "mean";
    std::size_t lag_ = 0;
    double frequency_ = 0.0;
    KernelSpec kernel_;
    std::optional<StatisticDescriptor> descriptor_;
    std::optional<std::function<double(const SecondOrderModel&)>> closed_form_;
};

/// Replications of the auxiliary simulation that centres generic descriptors.
inline constexpr std::size_t kAuxiliaryReplications = 500;
/// Length multiplier of the auxiliary paths (20 n).
inline constexpr std::size_t kAuxiliaryLengthFactor = 20;

/// Mean of T over kAuxiliaryReplications paths of length 20 n drawn by
/// `simulate(length, seed)`, seeds derived from `seed` on the auxiliary stream.
[[nodiscard]] double auxiliary_center(const Statistic& stat, std::size_t n,
                                      const std::function<Series(std::size_t, std::uint64_t)>& simulate,
                                      std::uint64_t seed);

}  // namespace sieveboot
