#include "sieveboot/bootstrap.hpp"

#include <cmath>

#include "sieveboot/dgp.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/parallel.hpp"
#include "sieveboot/rng.hpp"
#include "sieveboot/simd.hpp"

namespace sieveboot {
namespace {

std::vector<double> centered_copy(std::span<const double> x) {
    const double mu = sample_mean(x);
    std::vector<double> y(x.begin(), x.end());
    for (double& v : y) v -= mu;
    return y;
}

}  // namespace

std::size_t OrderRule::p_max(std::size_t n) {
    if (n < 3) return 1;
    const auto nn = static_cast<double>(n);
    const auto p = static_cast<std::size_t>(std::floor(std::pow(nn / std::log(nn), 0.25)));
    return std::max<std::size_t>(1, p);
}

std::string_view to_string(OrderMode m) noexcept { return m == OrderMode::fixed ? "fixed" : "aic_capped"; }

std::size_t select_order(const Series& s, const OrderRule& rule) {
    const std::size_t n = s.size();
    if (n < 20) throw DomainError("select_order: at least 20 observations are required");
    const std::size_t cap = OrderRule::p_max(n);
    if (rule.mode == OrderMode::fixed) {
        if (!rule.fixed_p) throw DomainError("select_order: fixed mode requires fixed_p");
        return std::clamp<std::size_t>(*rule.fixed_p, 1, cap);
    }
    const auto path = levinson_variance_path(sample_acvf(s, cap, true), cap);
    const auto nn = static_cast<double>(n);
    std::size_t best = 1;
    double best_aic = nn * std::log(path[1]) + 2.0;
    for (std::size_t p = 2; p <= cap; ++p) {
        const double aic = nn * std::log(path[p]) + 2.0 * static_cast<double>(p);
        if (aic < best_aic) {
            best_aic = aic;
            best = p;
        }
    }
    return best;
}

SecondOrderModel SieveModel::second_order() const { return SecondOrderModel::from_ar(fit.a, residual_variance); }

SieveModel fit_sieve(const Series& s, const OrderRule& rule) {
    const std::size_t p = select_order(s, rule);
    if (s.size() <= p + 10) throw DomainError("fit_sieve: series too short for the selected order");
    const auto x = centered_copy(s.values());
    SieveModel m;
    m.n = s.size();
    m.p = p;
    m.fit = yule_walker_fit(sample_acvf(x, p, false), p);
    m.fit.source = AcvfKind::empirical;
    m.residuals = residuals(x, m.fit);
    m.residual_law = ecdf(m.residuals);
    m.residual_variance = simd::dot(m.residuals, m.residuals) / static_cast<double>(m.residuals.size());
    return m;
}

Series generate_bootstrap_series(const SieveModel& m, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw DomainError("generate_bootstrap_series: n must be positive");
    if (m.residuals.empty()) throw DomainError("generate_bootstrap_series: model has no residuals");
    const std::size_t burnin = default_burnin(m.p);
    std::vector<double> eps(n + burnin);
    Engine engine = make_engine(seed);
    std::uniform_int_distribution<std::size_t> pick(0, m.residuals.size() - 1);
    for (double& e : eps) e = m.residuals[pick(engine)];
    auto path = ar_filter(m.fit.a, eps);
    return Series(std::vector<double>(path.begin() + static_cast<std::ptrdiff_t>(burnin), path.end()), "bootstrap",
                  seed);
}

BootstrapResult bootstrap_distribution(const Series& s, const Statistic& stat, std::size_t B, const OrderRule& rule,
                                       std::uint64_t seed) {
    if (B < 100) throw DomainError("bootstrap_distribution: B must be at least 100");
    if (s.size() < stat.min_length()) throw DomainError("bootstrap_distribution: series too short for the statistic");
    const auto model = fit_sieve(s, rule);
    BootstrapResult out;
    out.B = B;
    out.statistic = stat.name();
    out.p_used = model.p;
    if (auto theta = stat.model_value(model.second_order())) {
        out.theta_star = *theta;
    } else {
        out.theta_star = auxiliary_center(
            stat, s.size(), [&](std::size_t len, std::uint64_t sd) { return generate_bootstrap_series(model, len, sd); },
            seed);
    }
    const std::size_t n = s.size();
    const double scale = stat.scale(n);
    std::vector<double> draws(B);
    parallel_for(B, [&](std::size_t b) {
        const auto xb = generate_bootstrap_series(model, n, derive_seed(seed, Stream::bootstrap, b));
        draws[b] = scale * (stat.evaluate(xb) - out.theta_star);
    });
    out.law = ecdf(draws);
    return out;
}

BootstrapResult bootstrap_distribution(const Series& s, const StatisticDescriptor& d, std::size_t B,
                                       const OrderRule& rule, std::uint64_t seed) {
    return bootstrap_distribution(s, Statistic::from_descriptor(d), B, rule, seed);
}

}  // namespace sieveboot
