#include "sieveboot/companion.hpp"

#include <cmath>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/parallel.hpp"
#include "sieveboot/rng.hpp"
#include "sieveboot/simd.hpp"

namespace sieveboot {
namespace {

constexpr std::size_t kArchRecordLength = 1'000'000;

void center_in_place(std::vector<double>& v) {
    const double mu = compensated_sum(v) / static_cast<double>(v.size());
    for (double& x : v) x -= mu;
}

}  // namespace

std::string_view to_string(InnovationSource s) noexcept {
    switch (s) {
        case InnovationSource::exact_ma1_filter: return "exact_ma1_filter";
        case InnovationSource::residual_resample: return "residual_resample";
        case InnovationSource::parametric: return "parametric";
    }
    return "parametric";
}

double CompanionSpec::innovation_variance() const {
    if (source == InnovationSource::parametric) return parametric.variance();
    if (record.empty()) throw DomainError("CompanionSpec: empty innovation record");
    return simd::dot(record, record) / static_cast<double>(record.size());
}

SecondOrderModel CompanionSpec::second_order() const { return SecondOrderModel::from_ar(a, innovation_variance()); }

CompanionSpec ma1_companion(const InnovationSpec& innovations, std::uint64_t seed, std::size_t record_length) {
    if (record_length == 0) throw DomainError("ma1_companion: record length must be positive");
    const auto path = ma1_example(record_length + kMa1FilterLength, seed, innovations);
    const auto ve = path.ve.values().subspan(path.burnin);
    CompanionSpec spec;
    spec.a = true_ar_coefficients_ma1(kMa1FilterLength);
    spec.source = InnovationSource::exact_ma1_filter;
    spec.record.assign(ve.begin(), ve.end());
    center_in_place(spec.record);
    spec.burnin = default_burnin(spec.a.size());
    return spec;
}

CompanionSpec companion_for(const ModelSpec& model, std::uint64_t seed) {
    const std::uint64_t record_seed = derive_seed(seed, Stream::innovation_record, 0);
    CompanionSpec spec;
    switch (model.family) {
        case ModelFamily::linear: {
            if (model.is_ma1_example()) return ma1_companion(model.innovation, record_seed);
            std::vector<double> neg_b(model.coefficients.size());
            for (std::size_t j = 0; j < neg_b.size(); ++j) neg_b[j] = -model.coefficients[j];
            if (!neg_b.empty()) {
                if (!(min_modulus_on_disk(neg_b, 1.0) > 0.0)) {
                    throw ConfigError("dgp.coefficients",
                                      "companion requires an invertible MA polynomial or the MA(1) example");
                }
                // 1 / B(z) = sum alpha_j z^j, so X_t = -sum_{j>=1} alpha_j X_{t-j} + e_t.
                const auto inv = invert_ar_polynomial(neg_b, default_inversion_length(neg_b));
                spec.a.resize(inv.L);
                for (std::size_t j = 1; j <= inv.L; ++j) spec.a[j - 1] = -inv.alpha[j];
            }
            spec.source = InnovationSource::parametric;
            spec.parametric = model.innovation;
            break;
        }
        case ModelFamily::ar:
            spec.a = model.coefficients;
            spec.source = InnovationSource::parametric;
            spec.parametric = model.innovation;
            break;
        case ModelFamily::arch1: {
            auto path = simulate_arch1(model.arch1(), kArchRecordLength, record_seed, model.burnin);
            spec.record.assign(path.values().begin(), path.values().end());
            center_in_place(spec.record);
            spec.source = InnovationSource::residual_resample;
            break;
        }
    }
    spec.burnin = default_burnin(spec.a.size());
    return spec;
}

Acvf ar_model_acvf(std::span<const double> a, double sigma2, std::size_t maxlag) {
    if (!(sigma2 >= 0.0)) throw DomainError("ar_model_acvf: sigma2 must be nonnegative");
    Acvf g;
    g.kind = AcvfKind::theoretical;
    g.gamma.assign(maxlag + 1, 0.0);
    const std::size_t L = default_inversion_length(a) + maxlag;
    const auto inv = invert_ar_polynomial(a, L);
    const std::span<const double> alpha(inv.alpha);
    for (std::size_t h = 0; h <= maxlag; ++h) {
        const std::size_t len = alpha.size() - h;
        g.gamma[h] = sigma2 * simd::dot(alpha.first(len), alpha.subspan(h, len));
    }
    return g;
}

Series build_companion(const CompanionSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("build_companion: n must be positive");
    const std::size_t total = n + spec.burnin;
    std::vector<double> eps(total);
    Engine engine = make_engine(seed);
    if (spec.source == InnovationSource::parametric) {
        fill_innovations(spec.parametric, engine, eps);
    } else {
        if (spec.record.empty()) throw DomainError("build_companion: empty innovation record");
        std::uniform_int_distribution<std::size_t> pick(0, spec.record.size() - 1);
        for (double& e : eps) e = spec.record[pick(engine)];
    }
    auto path = ar_filter(spec.a, eps);
    return Series(std::vector<double>(path.begin() + static_cast<std::ptrdiff_t>(spec.burnin), path.end()),
                  "companion", seed);
}

OracleResult companion_distribution(const CompanionSpec& spec, const Statistic& stat, std::size_t n,
                                    std::size_t M, std::uint64_t seed) {
    if (M < 200) throw DomainError("companion_distribution: M must be at least 200");
    if (n < stat.min_length()) throw DomainError("companion_distribution: n too small for the statistic");
    OracleResult out;
    out.M = M;
    if (auto theta = stat.model_value(spec.second_order())) {
        out.theta_tilde = *theta;
    } else {
        out.theta_tilde = auxiliary_center(
            stat, n, [&](std::size_t len, std::uint64_t s) { return build_companion(spec, len, s); }, seed);
    }
    const double scale = stat.scale(n);
    std::vector<double> draws(M);
    parallel_for(M, [&](std::size_t m) {
        const auto path = build_companion(spec, n, derive_seed(seed, Stream::oracle, m));
        draws[m] = scale * (stat.evaluate(path) - out.theta_tilde);
    });
    out.law = ecdf(draws);
    return out;
}

}  // namespace sieveboot
