#include "sieveboot/statistic.hpp"

#include <cmath>
#include <numbers>
#include <string_view>

#include "sieveboot/asymptotics.hpp"
#include "sieveboot/companion.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/parallel.hpp"
#include "sieveboot/rng.hpp"

namespace sieveboot {
namespace {

// Parses "<prefix><h>" and returns h.
std::optional<std::size_t> lag_suffix(std::string_view name, std::string_view prefix) {
    if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
    std::size_t h = 0;
    for (char c : name.substr(prefix.size())) {
        if (c < '0' || c > '9') return std::nullopt;
        h = 10 * h + static_cast<std::size_t>(c - '0');
    }
    return h;
}

double model_acvf_at(const SecondOrderModel& m, std::size_t h) { return m.acvf(h).gamma[h]; }

double model_acf_at(const SecondOrderModel& m, std::size_t h) {
    const auto g = m.acvf(h);
    if (!(g.gamma[0] > 0.0)) throw DegenerateSeriesError("model autocorrelation: gamma(0) must be positive");
    return g.gamma[h] / g.gamma[0];
}

}  // namespace

SecondOrderModel SecondOrderModel::from_ar(std::vector<double> a, double sigma2) {
    SecondOrderModel m;
    m.acvf = [a, sigma2](std::size_t maxlag) { return ar_model_acvf(a, sigma2, maxlag); };
    m.density = [a, sigma2](double lambda) { return ar_spectral_density(a, sigma2, lambda); };
    return m;
}

SecondOrderModel SecondOrderModel::from_linear(std::vector<double> b, double sigma2) {
    SecondOrderModel m;
    std::vector<double> psi{1.0};
    psi.insert(psi.end(), b.begin(), b.end());
    m.acvf = [psi, sigma2](std::size_t maxlag) {
        Acvf g;
        g.kind = AcvfKind::theoretical;
        g.gamma.assign(maxlag + 1, 0.0);
        for (std::size_t h = 0; h <= maxlag && h < psi.size(); ++h) {
            double s = 0.0;
            for (std::size_t j = 0; j + h < psi.size(); ++j) s += psi[j] * psi[j + h];
            g.gamma[h] = sigma2 * s;
        }
        return g;
    };
    m.density = [b, sigma2](double lambda) { return linear_process_spectral_density(b, sigma2, lambda); };
    return m;
}

SecondOrderModel SecondOrderModel::white_noise(double variance) { return from_linear({}, variance); }

Statistic Statistic::mean() { return {}; }

Statistic Statistic::acvf(std::size_t h) {
    Statistic s;
    s.kind_ = Kind::acvf;
    s.name_ = "acvf-lag-" + std::to_string(h);
    s.lag_ = h;
    return s;
}

Statistic Statistic::acf(std::size_t h) {
    Statistic s;
    s.kind_ = Kind::acf;
    s.name_ = "acf-lag-" + std::to_string(h);
    s.lag_ = h;
    return s;
}

Statistic Statistic::ratio_cosine(std::size_t h) {
    Statistic s;
    s.kind_ = Kind::ratio;
    s.name_ = "ratio-cos-lag-" + std::to_string(h);
    s.lag_ = h;
    return s;
}

Statistic Statistic::spectral_density(double lambda, KernelSpec kernel) {
    if (!(lambda >= 0.0 && lambda <= std::numbers::pi)) {
        throw DomainError("spectral_density: lambda must lie in [0, pi]");
    }
    if (!(kernel.bandwidth > 0.0 && kernel.bandwidth <= std::numbers::pi)) {
        throw DomainError("spectral_density: bandwidth must lie in (0, pi]");
    }
    Statistic s;
    s.kind_ = Kind::spectral_density;
    s.name_ = "spectral-density";
    s.frequency_ = lambda;
    s.kernel_ = kernel;
    return s;
}

Statistic Statistic::from_descriptor(StatisticDescriptor d) {
    if (d.m < 1 || d.d < 1 || !d.g || !d.f) throw DomainError("from_descriptor: incomplete descriptor");
    Statistic s;
    s.kind_ = Kind::generalized_mean;
    s.name_ = d.name;
    s.lag_ = d.m - 1;
    if (d.name == "mean") {
        s.closed_form_ = [](const SecondOrderModel& m) { return m.mean; };
    } else if (d.name == "product-lag-1") {
        s.closed_form_ = [](const SecondOrderModel& m) { return model_acvf_at(m, 1) + m.mean * m.mean; };
    } else if (auto h = lag_suffix(d.name, "acvf-gm-lag-")) {
        s.closed_form_ = [h = *h](const SecondOrderModel& m) { return model_acvf_at(m, h); };
    } else if (auto h2 = lag_suffix(d.name, "acf-gm-lag-")) {
        s.closed_form_ = [h = *h2](const SecondOrderModel& m) { return model_acf_at(m, h); };
    }
    s.descriptor_ = std::move(d);
    return s;
}

double Statistic::evaluate(std::span<const double> x) const {
    switch (kind_) {
        case Kind::mean: return sample_mean(x);
        case Kind::acvf: return sample_acvf(x, lag_).gamma[lag_];
        case Kind::acf: return sample_acf(x, lag_)[lag_];
        case Kind::ratio: return ratio_statistic(x, WeightFunction::cosine(lag_));
        case Kind::spectral_density: return kernel_spectral_estimate(x, kernel_, frequency_);
        case Kind::generalized_mean: return generalized_mean_statistic(x, *descriptor_);
    }
    throw DomainError("Statistic: unknown kind");
}

std::optional<double> Statistic::model_value(const SecondOrderModel& model) const {
    switch (kind_) {
        case Kind::mean: return model.mean;
        case Kind::acvf: return model_acvf_at(model, lag_);
        case Kind::acf: return model_acf_at(model, lag_);
        case Kind::ratio: {
            const auto phi = WeightFunction::cosine(lag_);
            const double den = integrate_0_pi(model.density);
            if (!(den > 0.0)) throw DegenerateSeriesError("ratio model value: spectral density integrates to zero");
            return integrate_0_pi([&](double l) { return phi(l) * model.density(l); }) / den;
        }
        case Kind::spectral_density: return model.density(frequency_);
        case Kind::generalized_mean:
            if (closed_form_) return (*closed_form_)(model);
            return std::nullopt;
    }
    return std::nullopt;
}

double Statistic::scale(std::size_t n) const {
    const auto nn = static_cast<double>(n);
    return kind_ == Kind::spectral_density ? std::sqrt(nn * kernel_.bandwidth) : std::sqrt(nn);
}

std::size_t Statistic::min_length() const noexcept {
    switch (kind_) {
        case Kind::mean: return 1;
        case Kind::acvf:
        case Kind::acf: return lag_ + 1;
        case Kind::ratio:
        case Kind::spectral_density: return 2;
        case Kind::generalized_mean: return descriptor_ ? descriptor_->m : 1;
    }
    return 1;
}

double auxiliary_center(const Statistic& stat, std::size_t n,
                        const std::function<Series(std::size_t, std::uint64_t)>& simulate, std::uint64_t seed) {
    const std::size_t length = kAuxiliaryLengthFactor * n;
    std::vector<double> values(kAuxiliaryReplications);
    parallel_for(kAuxiliaryReplications, [&](std::size_t r) {
        values[r] = stat.evaluate(simulate(length, derive_seed(seed, Stream::auxiliary, r)));
    });
    return compensated_sum(values) / static_cast<double>(values.size());
}

}  // namespace sieveboot
