#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/companion.hpp"
#include "sieveboot/dgp.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/series.hpp"
#include "sieveboot/statistic.hpp"

using namespace sieveboot;
using Catch::Approx;

TEST_CASE("model ACVF of an AR recursion", "[companion]") {
    const auto g = ar_model_acvf(std::vector<double>{0.5}, 1.0, 3);
    CHECK(g.kind == AcvfKind::theoretical);
    CHECK(g.gamma[0] == Approx(4.0 / 3.0).margin(1e-12));
    CHECK(g.gamma[1] == Approx(2.0 / 3.0).margin(1e-12));

    const auto m = ar_model_acvf(true_ar_coefficients_ma1(60), 4.0, 4);
    CHECK(m.gamma[0] == Approx(5.0).margin(1e-8));
    CHECK(m.gamma[1] == Approx(-2.0).margin(1e-8));
    CHECK(std::abs(m.gamma[2]) <= 1e-8);
    CHECK(std::abs(m.gamma[3]) <= 1e-8);

    const auto w = ar_model_acvf(std::vector<double>{}, 2.5, 2);
    CHECK(w.gamma == std::vector<double>{2.5, 0.0, 0.0});
    CHECK_THROWS_AS(ar_model_acvf(std::vector<double>{0.5}, -1.0, 2), DomainError);
}

TEST_CASE("exact MA(1) companion, Gaussian innovations", "[companion]") {
    const auto spec = ma1_companion({}, 21);
    CHECK(spec.source == InnovationSource::exact_ma1_filter);
    CHECK(spec.a.size() == kMa1FilterLength);
    CHECK(spec.record.size() == kCompanionRecordLength);
    CHECK(std::abs(compensated_sum(spec.record)) / static_cast<double>(spec.record.size()) < 1e-12);
    CHECK(spec.innovation_variance() == Approx(4.0).epsilon(0.025));
    CHECK(std::abs(sample_excess_kurtosis(spec.record)) < 0.05);

    const auto x = build_companion(spec, 100'000, 5);
    const auto g = sample_acvf(x, 2);
    CHECK(g.gamma[0] == Approx(5.0).margin(0.15));
    CHECK(g.gamma[1] == Approx(-2.0).margin(0.1));
}

TEST_CASE("exact MA(1) companion, exponential innovations", "[companion]") {
    const auto spec = ma1_companion({InnovationFamily::centered_exponential, 1.0}, 22);
    CHECK(sample_excess_kurtosis(spec.record) == Approx(2.4).margin(0.2));
    CHECK(spec.innovation_variance() == Approx(4.0).epsilon(0.025));
}

TEST_CASE("parametric companion with N(0, 4) innovations", "[companion]") {
    CompanionSpec spec;
    spec.a = true_ar_coefficients_ma1(60);
    spec.source = InnovationSource::parametric;
    spec.parametric = {InnovationFamily::gaussian, 2.0};
    spec.burnin = default_burnin(spec.a.size());
    CHECK(spec.innovation_variance() == 4.0);
    const auto x = build_companion(spec, 100'000, 6);
    const auto g = sample_acvf(x, 1);
    CHECK(g.gamma[0] == Approx(5.0).margin(0.15));
    CHECK(g.gamma[1] == Approx(-2.0).margin(0.1));

    const auto so = spec.second_order().acvf(2);
    CHECK(so.gamma[0] == Approx(5.0).margin(1e-8));
}

TEST_CASE("companion_for dispatch", "[companion]") {
    const auto ma = companion_for(ModelSpec::ma1_example(InnovationFamily::gaussian), 1);
    CHECK(ma.source == InnovationSource::exact_ma1_filter);

    ModelSpec inv;
    inv.family = ModelFamily::linear;
    inv.coefficients = {0.5};
    const auto c = companion_for(inv, 1);
    CHECK(c.source == InnovationSource::parametric);
    REQUIRE(c.a.size() > 10);
    // 1 / (1 + 0.5 z) = sum (-0.5)^j z^j, so a_j = -(-0.5)^j.
    CHECK(c.a[0] == Approx(0.5).margin(1e-15));
    CHECK(c.a[1] == Approx(-0.25).margin(1e-15));
    CHECK(c.second_order().acvf(1).gamma[1] == Approx(0.5).margin(1e-10));

    ModelSpec bad = inv;
    bad.coefficients = {-3.0};
    CHECK_THROWS_AS(companion_for(bad, 1), ConfigError);

    ModelSpec ar;
    ar.family = ModelFamily::ar;
    ar.coefficients = {0.5};
    const auto a = companion_for(ar, 1);
    CHECK(a.a == std::vector<double>{0.5});
    CHECK(a.source == InnovationSource::parametric);

    ModelSpec arch;
    arch.family = ModelFamily::arch1;
    arch.coefficients = {1.0, 0.3};
    const auto h = companion_for(arch, 1);
    CHECK(h.source == InnovationSource::residual_resample);
    CHECK(h.a.empty());
    CHECK(h.innovation_variance() == Approx(1.0 / 0.7).epsilon(0.03));

    CHECK(to_string(InnovationSource::exact_ma1_filter) == "exact_ma1_filter");
}

TEST_CASE("build_companion is deterministic", "[companion]") {
    const auto spec = ma1_companion({}, 3, 10'000);
    const auto a = build_companion(spec, 500, 9);
    const auto b = build_companion(spec, 500, 9);
    CHECK(std::vector<double>(a.values().begin(), a.values().end()) ==
          std::vector<double>(b.values().begin(), b.values().end()));
    CHECK_THROWS_AS(build_companion(spec, 0, 9), DomainError);
}

TEST_CASE("companion laws of the MA(1) example", "[companion][montecarlo]") {
    const auto gauss = ma1_companion({}, 31);
    const auto expo = ma1_companion({InnovationFamily::centered_exponential, 1.0}, 32);

    const auto mean = companion_distribution(gauss, Statistic::mean(), 2000, 2000, 41);
    CHECK(mean.M == 2000);
    CHECK(mean.theta_tilde == 0.0);
    CHECK(mean.law.variance() == Approx(1.0).epsilon(0.10));

    const auto g0 = companion_distribution(expo, Statistic::acvf(0), 2000, 2000, 42);
    CHECK(g0.theta_tilde == Approx(5.0).epsilon(0.01));
    CHECK(g0.law.variance() == Approx(126.0).epsilon(0.10));

    const auto r1 = companion_distribution(expo, Statistic::acf(1), 2000, 2000, 43);
    CHECK(r1.theta_tilde == Approx(-0.4).margin(1e-6));
    CHECK(r1.law.variance() == Approx(0.6224).epsilon(0.10));

    CHECK_THROWS_AS(companion_distribution(gauss, Statistic::mean(), 2000, 199, 1), DomainError);
}
