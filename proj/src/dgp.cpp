#include "sieveboot/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/simd.hpp"

namespace sieveboot {

double InnovationSpec::raw_fourth_moment_ratio() const noexcept {
    switch (family) {
        case InnovationFamily::gaussian: return 3.0;
        case InnovationFamily::centered_exponential: return 9.0;
        case InnovationFamily::centered_uniform: return 9.0 / 5.0;
    }
    return 3.0;
}

std::string_view to_string(InnovationFamily f) noexcept {
    switch (f) {
        case InnovationFamily::gaussian: return "gaussian";
        case InnovationFamily::centered_exponential: return "centered_exponential";
        case InnovationFamily::centered_uniform: return "centered_uniform";
    }
    return "gaussian";
}

InnovationFamily innovation_family_from_string(std::string_view name) {
    if (name == "gaussian") return InnovationFamily::gaussian;
    if (name == "centered_exponential") return InnovationFamily::centered_exponential;
    if (name == "centered_uniform") return InnovationFamily::centered_uniform;
    throw DomainError("unknown innovation family '" + std::string(name) + "'");
}

std::size_t default_burnin(std::size_t order) noexcept { return std::max<std::size_t>(1000, 50 * order); }

void fill_innovations(const InnovationSpec& spec, Engine& engine, std::span<double> out) {
    switch (spec.family) {
        case InnovationFamily::gaussian: {
            std::normal_distribution<double> dist(0.0, 1.0);
            for (double& v : out) v = spec.scale * dist(engine);
            break;
        }
        case InnovationFamily::centered_exponential: {
            std::exponential_distribution<double> dist(1.0);
            for (double& v : out) v = spec.scale * (dist(engine) - 1.0);
            break;
        }
        case InnovationFamily::centered_uniform: {
            const double half_width = std::sqrt(3.0);
            std::uniform_real_distribution<double> dist(-half_width, half_width);
            for (double& v : out) v = spec.scale * dist(engine);
            break;
        }
    }
}

std::vector<double> draw_innovations(const InnovationSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("draw_innovations: n must be positive");
    if (!(spec.scale > 0.0)) throw DomainError("draw_innovations: scale must be positive");
    std::vector<double> out(n);
    Engine engine = make_engine(seed);
    fill_innovations(spec, engine, out);
    return out;
}

LinearPath simulate_linear(const LinearModel& model, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("simulate_linear: n must be positive");
    const std::size_t q = model.b.size();
    const auto e = draw_innovations(model.innovations, n + q, seed);
    std::vector<double> taps(q + 1);
    taps[0] = 1.0;
    std::copy(model.b.begin(), model.b.end(), taps.begin() + 1);
    std::vector<double> x(n);
    simd::fir(e, taps, x);
    return {Series(std::move(x), "linear", seed),
            Series(std::vector<double>(e.begin() + static_cast<std::ptrdiff_t>(q), e.end()), "linear-innovations",
                   seed)};
}

std::vector<double> ar_filter(std::span<const double> a, std::span<const double> e) {
    const std::size_t p = a.size();
    std::vector<double> a_rev(a.rbegin(), a.rend());
    // p leading zeros hold the initial state.
    std::vector<double> buf(p + e.size(), 0.0);
    for (std::size_t t = 0; t < e.size(); ++t) {
        buf[p + t] = simd::dot(a_rev, std::span<const double>(buf).subspan(t, p)) + e[t];
    }
    return {buf.begin() + static_cast<std::ptrdiff_t>(p), buf.end()};
}

Series simulate_ar(const ArModel& model, std::size_t n, std::uint64_t seed, std::size_t burnin) {
    if (n == 0) throw DomainError("simulate_ar: n must be positive");
    if (!model.a.empty() && !(min_modulus_on_disk(model.a, 1.0) > 0.0)) {
        throw StabilityError("simulate_ar: AR polynomial has a root in the closed unit disk");
    }
    const auto e = draw_innovations(model.innovations, n + burnin, seed);
    auto path = ar_filter(model.a, e);
    return Series(std::vector<double>(path.begin() + static_cast<std::ptrdiff_t>(burnin), path.end()), "ar", seed);
}

std::vector<double> ma1_wold_filter() {
    std::vector<double> taps(kMa1FilterLength + 1);
    taps[0] = 1.0;
    double w = 1.5;
    for (std::size_t j = 1; j <= kMa1FilterLength; ++j) {
        taps[j] = -w;
        w *= 0.5;
    }
    return taps;
}

Ma1Path ma1_example(std::size_t n, std::uint64_t seed, const InnovationSpec& innovations) {
    if (n == 0) throw DomainError("ma1_example: n must be positive");
    // Same draws as simulate_linear({-2}, ...): one presample innovation.
    const auto e = draw_innovations(innovations, n + 1, seed);
    std::vector<double> x(n);
    const double ma_taps[] = {1.0, -2.0};
    simd::fir(e, ma_taps, x);

    const auto taps = ma1_wold_filter();
    std::vector<double> padded(kMa1FilterLength, 0.0);
    padded.insert(padded.end(), e.begin(), e.end());
    std::vector<double> ve_all(e.size());
    simd::fir(padded, taps, ve_all);

    Ma1Path path{Series(std::move(x), "ma1-example", seed),
                 Series(std::vector<double>(e.begin() + 1, e.end()), "ma1-innovations", seed),
                 Series(std::vector<double>(ve_all.begin() + 1, ve_all.end()), "ma1-wold-innovations", seed),
                 std::min(kMa1FilterLength, n)};
    return path;
}

Series simulate_arch1(const Arch1Model& model, std::size_t n, std::uint64_t seed, std::size_t burnin) {
    if (n == 0) throw DomainError("simulate_arch1: n must be positive");
    if (!(model.omega > 0.0)) throw DomainError("simulate_arch1: omega must be positive");
    if (!(model.alpha1 >= 0.0 && 3.0 * model.alpha1 * model.alpha1 < 1.0)) {
        throw DomainError("simulate_arch1: finite fourth moment requires 0 <= alpha1 and 3 alpha1^2 < 1");
    }
    Engine engine = make_engine(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> x(n);
    double prev = 0.0;
    for (std::size_t t = 0; t < n + burnin; ++t) {
        const double sigma = std::sqrt(model.omega + model.alpha1 * prev * prev);
        prev = sigma * z(engine);
        if (t >= burnin) x[t - burnin] = prev;
    }
    return Series(std::move(x), "arch1", seed);
}

std::string_view to_string(ModelFamily f) noexcept {
    switch (f) {
        case ModelFamily::linear: return "linear";
        case ModelFamily::ar: return "ar";
        case ModelFamily::arch1: return "arch1";
    }
    return "linear";
}

ModelSpec ModelSpec::ma1_example(InnovationFamily family) {
    return {ModelFamily::linear, {-2.0}, {family, 1.0}, default_burnin(1)};
}

bool ModelSpec::is_ma1_example() const noexcept {
    return family == ModelFamily::linear && coefficients.size() == 1 && coefficients[0] == -2.0;
}

Arch1Model ModelSpec::arch1() const {
    if (family != ModelFamily::arch1 || coefficients.size() != 2) {
        throw DomainError("ModelSpec: arch1 requires coefficients (omega, alpha1)");
    }
    return {coefficients[0], coefficients[1]};
}

Series simulate(const ModelSpec& model, std::size_t n, std::uint64_t seed) {
    switch (model.family) {
        case ModelFamily::linear: return simulate_linear({model.coefficients, model.innovation}, n, seed).x;
        case ModelFamily::ar: return simulate_ar({model.coefficients, model.innovation}, n, seed, model.burnin);
        case ModelFamily::arch1: return simulate_arch1(model.arch1(), n, seed, model.burnin);
    }
    throw DomainError("simulate: unknown model family");
}

}  // namespace sieveboot
