#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "sieveboot/dgp.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/rng.hpp"
#include "sieveboot/series.hpp"

using namespace sieveboot;
using Catch::Approx;

TEST_CASE("Series rejects empty and non-finite input", "[series]") {
    CHECK_THROWS_AS(Series(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(Series(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}), DomainError);
    CHECK_THROWS_AS(Series(std::vector<double>{std::numeric_limits<double>::infinity()}), DomainError);
    const Series s({1.0, 2.0}, "hand", 7);
    CHECK(s.size() == 2);
    CHECK(s.origin() == "hand");
    CHECK(s.seed() == 7u);
}

TEST_CASE("sample_mean", "[series]") {
    CHECK(sample_mean(Series({1, 1, 1, 1})) == 1.0);
    CHECK(sample_mean(Series({1, -1, 1, -1})) == 0.0);
    CHECK(sample_mean(Series({1, 2, 4})) == Approx(7.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("compensated_sum keeps small terms", "[series]") {
    const std::vector<double> x{1e16, 1.0, -1e16, 1.0};
    CHECK(compensated_sum(x) == 2.0);
}

TEST_CASE("sample_acvf", "[series]") {
    const auto g = sample_acvf(Series({3, 3, 3, 3}), 3, true);
    for (double v : g.gamma) CHECK(v == 0.0);
    CHECK(g.kind == AcvfKind::empirical);

    CHECK(sample_acvf(Series({1, -1}), 1, false).gamma[1] == -0.5);
    CHECK(sample_acvf(Series({1, -1, 1, -1}), 0, true).gamma[0] == 1.0);
    CHECK_THROWS_AS(sample_acvf(Series({1, 2}), 2), DomainError);
}

TEST_CASE("Acvf::at is symmetric and zero beyond range", "[series]") {
    Acvf g;
    g.gamma = {5, -2};
    CHECK(g.at(-1) == -2.0);
    CHECK(g.at(1) == -2.0);
    CHECK(g.at(2) == 0.0);
    CHECK(g.max_lag() == 1);
}

TEST_CASE("sample_acf", "[series]") {
    CHECK(sample_acf(Series({0.3, 1.2, -4.0, 2.0}), 0)[0] == 1.0);
    CHECK(sample_acf(Series({1, -1, 1, -1}), 1)[1] == Approx(-0.75));
    CHECK_THROWS_AS(sample_acf(Series({2, 2, 2}), 1), DegenerateSeriesError);

    const auto z = draw_innovations({}, 100'000, 42);
    CHECK(std::abs(sample_acf(z, 1)[1]) <= 0.02);
}

TEST_CASE("ecdf and its functionals", "[series]") {
    const std::vector<double> v{3, 1, 2};
    const auto f = ecdf(v);
    CHECK(std::vector<double>(f.sample().begin(), f.sample().end()) == std::vector<double>{1, 2, 3});
    CHECK(f.cdf(2.0) == Approx(2.0 / 3.0));
    CHECK(f.mean() == 2.0);
    CHECK(f.variance() == 1.0);
    CHECK(f.quantile(0.5) == 2.0);
    CHECK(f.quantile(0.25) == 1.5);

    const auto z = ecdf(std::vector<double>{0.0});
    CHECK(z.cdf(-1e-300) == 0.0);
    CHECK(z.cdf(0.0) == 1.0);

    const auto ties = ecdf(std::vector<double>{1, 1, 1});
    CHECK(ties.cdf(1.0) == 1.0);
    CHECK(ties.cdf(0.999) == 0.0);
}

TEST_CASE("kolmogorov_distance", "[series]") {
    const auto f = ecdf(std::vector<double>{0.1, 0.5, 0.7});
    CHECK(kolmogorov_distance(f, f) == 0.0);
    CHECK(kolmogorov_distance(ecdf(std::vector<double>{0}), ecdf(std::vector<double>{1})) == 1.0);
    CHECK(kolmogorov_distance(ecdf(std::vector<double>{0, 1}), ecdf(std::vector<double>{0.5})) == 0.5);

    // Brute-force oracle on a fine grid that contains every jump point.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    std::vector<double> a(300), b(200);
    for (double& x : a) x = z(rng);
    for (double& x : b) x = 0.3 + z(rng);
    const auto fa = ecdf(a);
    const auto fb = ecdf(b);
    double brute = 0.0;
    for (const auto* s : {&a, &b}) {
        for (double x : *s) brute = std::max(brute, std::abs(fa.cdf(x) - fb.cdf(x)));
    }
    CHECK(kolmogorov_distance(fa, fb) == brute);
    CHECK(kolmogorov_distance(fb, fa) == brute);
}

TEST_CASE("sample_excess_kurtosis", "[series]") {
    const auto g = draw_innovations({InnovationFamily::gaussian, 1.0}, 1'000'000, 3);
    CHECK(std::abs(sample_excess_kurtosis(g)) < 0.05);
    const auto e = draw_innovations({InnovationFamily::centered_exponential, 1.0}, 1'000'000, 3);
    CHECK(sample_excess_kurtosis(e) == Approx(6.0).margin(0.3));
}

TEST_CASE("generalized-mean descriptors", "[series]") {
    CHECK(generalized_mean_statistic(Series({2, 4}), StatisticDescriptor::mean()) == 3.0);
    CHECK(generalized_mean_statistic(Series({1, -1, 1}), StatisticDescriptor::product_lag1()) == -1.0);

    ArModel ar{{0.5}, {}};
    const auto x = simulate_ar(ar, 10'000, 17, 1000);
    const double direct = sample_acf(x, 1)[1];
    const double gm = generalized_mean_statistic(x, StatisticDescriptor::acf_lag(1));
    CHECK(std::abs(direct - gm) < 10.0 / 10'000.0);

    const double acvf_direct = sample_acvf(x, 2).gamma[2];
    const double acvf_gm = generalized_mean_statistic(x, StatisticDescriptor::acvf_lag(2));
    CHECK(std::abs(acvf_direct - acvf_gm) < 10.0 / 10'000.0);

    CHECK_THROWS_AS(generalized_mean_statistic(Series({1.0}), StatisticDescriptor::product_lag1()), DomainError);
}

TEST_CASE("derive_seed separates streams and indices", "[rng]") {
    const auto a = derive_seed(1, Stream::bootstrap, 0);
    CHECK(a == derive_seed(1, Stream::bootstrap, 0));
    CHECK(a != derive_seed(1, Stream::bootstrap, 1));
    CHECK(a != derive_seed(1, Stream::truth, 0));
    CHECK(a != derive_seed(2, Stream::bootstrap, 0));
    CHECK(derive_seed(9, Stream::data, 3) == mix64(mix64(9 ^ mix64(1)) + 3));
}
