#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "sieveboot/asymptotics.hpp"
#include "sieveboot/companion.hpp"
#include "sieveboot/dgp.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/parallel.hpp"
#include "sieveboot/rng.hpp"
#include "sieveboot/spectral.hpp"

using namespace sieveboot;
using Catch::Approx;
using std::numbers::pi;

namespace {

Acvf ma1_acvf() { return Acvf{{5.0, -2.0, 0.0, 0.0}, AcvfKind::theoretical}; }

SpectralDensity ma1_density() {
    return [](double l) { return linear_process_spectral_density(std::vector<double>{-2.0}, 1.0, l); };
}

// Brute-force sum over |k| <= K of the autocovariance variance formula.
double brute_acvf_variance(const Acvf& g, long h, double kappa) {
    double s = kappa * g.at(h) * g.at(h);
    for (long k = -50; k <= 50; ++k) s += g.at(k) * g.at(k) + g.at(k + h) * g.at(k - h);
    return s;
}

}  // namespace

TEST_CASE("companion kurtosis of the MA(1) example", "[asymptotics]") {
    CHECK(ma1_companion_kurtosis(3.0) == Approx(0.0).margin(1e-15));
    CHECK(ma1_companion_kurtosis(9.0) == Approx(2.4).margin(1e-15));
    CHECK(ma1_companion_kurtosis(1.8) == Approx(-0.48).margin(1e-15));
    CHECK_THROWS_AS(ma1_companion_kurtosis(0.5), DomainError);
}

TEST_CASE("autocovariance asymptotic variance", "[asymptotics]") {
    const auto g = ma1_acvf();
    CHECK(acvf_asymptotic_variance(g, 0, {0.0}) == Approx(66.0).margin(1e-12));
    CHECK(acvf_asymptotic_variance(g, 0, {6.0}) == Approx(216.0).margin(1e-12));
    CHECK(acvf_asymptotic_variance(g, 0, {2.4}) == Approx(126.0).margin(1e-12));
    for (long h : {1L, 2L, 3L}) {
        CHECK(acvf_asymptotic_variance(g, static_cast<std::size_t>(h), {1.3}) ==
              Approx(brute_acvf_variance(g, h, 1.3)).margin(1e-12));
    }
    Acvf ar1{{}, AcvfKind::theoretical};
    for (int h = 0; h < 80; ++h) ar1.gamma.push_back(4.0 / 3.0 * std::pow(0.5, h));
    CHECK(acvf_asymptotic_variance(ar1, 1, {0.0}) == Approx(brute_acvf_variance(ar1, 1, 0.0)).epsilon(1e-10));
}

TEST_CASE("Bartlett formula", "[asymptotics]") {
    CHECK(bartlett_variance(std::vector<double>{1.0, 0.0, 0.0}, 1) == Approx(1.0));
    const double rho = -0.4;
    const double closed = 1.0 - 3.0 * rho * rho + 4.0 * std::pow(rho, 4);
    CHECK(closed == Approx(0.6224));
    CHECK(bartlett_variance(std::vector<double>{1.0, rho, 0.0}, 1) == Approx(closed).margin(1e-14));
    CHECK(bartlett_variance(std::vector<double>{1.0, rho, 0.0}, 0) == Approx(0.0).margin(1e-15));
    CHECK_THROWS_AS(bartlett_variance(std::vector<double>{0.9, 0.1}, 1), DomainError);
}

TEST_CASE("long-run variance of the mean", "[asymptotics]") {
    CHECK(mean_asymptotic_variance(ma1_acvf()) == Approx(1.0).margin(1e-15));
    CHECK(mean_asymptotic_variance(Acvf{{2.5}, AcvfKind::theoretical}) == 2.5);
    Acvf ar1{{}, AcvfKind::theoretical};
    for (int h = 0; h < 80; ++h) ar1.gamma.push_back(4.0 / 3.0 * std::pow(0.5, h));
    CHECK(mean_asymptotic_variance(ar1) == Approx(4.0).epsilon(1e-10));
}

TEST_CASE("integrated periodogram variance", "[asymptotics]") {
    const auto f = ma1_density();
    for (std::size_t h : {0u, 1u, 2u}) {
        for (double kappa : {0.0, 2.4, 6.0}) {
            const double v = integrated_periodogram_variance(f, WeightFunction::cosine(h), {kappa});
            const double target = acvf_asymptotic_variance(ma1_acvf(), h, {kappa});
            INFO("h = " << h << " kappa = " << kappa);
            CHECK(v == Approx(target).epsilon(1e-6));
        }
    }
    CHECK(integrated_periodogram_variance(f, WeightFunction::constant(0.0), {2.0}) == 0.0);
    const SpectralDensity flat = [](double) { return 1.0 / (2.0 * pi); };
    CHECK(integrated_periodogram_variance(flat, WeightFunction::constant(1.0), {0.0}) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ratio statistic variance", "[asymptotics]") {
    const auto f = ma1_density();
    CHECK(ratio_statistic_variance(f, WeightFunction::constant(3.0)) == Approx(0.0).margin(1e-14));
    const double v = ratio_statistic_variance(f, WeightFunction::cosine(1));
    CHECK(v > 0.0);
    const SpectralDensity f7 = [&](double l) { return 7.0 * f(l); };
    CHECK(ratio_statistic_variance(f7, WeightFunction::cosine(1)) == Approx(v).epsilon(1e-12));
    const SpectralDensity zero = [](double) { return 0.0; };
    CHECK_THROWS_AS(ratio_statistic_variance(zero, WeightFunction::cosine(1)), DomainError);
}

TEST_CASE("ratio statistic variance against Monte Carlo", "[asymptotics][montecarlo]") {
    const double target = ratio_statistic_variance(ma1_density(), WeightFunction::cosine(1));
    const std::size_t n = 10'000;
    const std::size_t reps = 2000;
    const auto phi = WeightFunction::cosine(1);
    std::vector<double> r(reps);
    parallel_for(reps, [&](std::size_t i) {
        const auto x = simulate_linear({{-2.0}, {}}, n, derive_seed(606, Stream::truth, i)).x;
        r[i] = ratio_statistic(x, phi);
    });
    // Centre at the population value 2 rho(1) = -0.8.
    double v = 0.0;
    for (double x : r) v += (x + 0.8) * (x + 0.8);
    v *= static_cast<double>(n) / static_cast<double>(reps);
    CHECK(v == Approx(target).epsilon(0.10));
}

TEST_CASE("spectral estimator variance and bias constants", "[asymptotics]") {
    const KernelSpec k{KernelShape::epanechnikov_pi, 0.4};
    CHECK(spectral_estimator_variance(0.0, false, k) == 0.0);
    const double interior = spectral_estimator_variance(0.3, false, k);
    CHECK(spectral_estimator_variance(0.3, true, k) == Approx(2.0 * interior).margin(1e-15));
    CHECK(spectral_estimator_variance(0.6, false, k) == Approx(4.0 * interior).margin(1e-15));
    CHECK(interior == Approx(0.09 * 2.0 * pi * 3.0 / (5.0 * pi)));
    CHECK_THROWS_AS(spectral_estimator_variance(-1.0, false, k), DomainError);

    CHECK(spectral_estimator_bias(5.0, k, BiasRegime::undersmoothed) == 0.0);
    CHECK(spectral_estimator_bias(0.0, k, BiasRegime::optimal) == 0.0);
    CHECK(spectral_estimator_bias(0.0, k, BiasRegime::undersmoothed) == 0.0);
    CHECK(spectral_estimator_bias(1.0, k, BiasRegime::optimal) == Approx(pi / 20.0).margin(1e-15));
}

TEST_CASE("VM matrix", "[asymptotics]") {
    const auto g = ma1_acvf();
    const auto V = vm_matrix(g, {0.0}, 3);
    REQUIRE(V.M == 3);
    REQUIRE(V.entries.size() == 16);
    CHECK(V(0, 1) == Approx(-40.0).margin(1e-12));
    for (double kappa : {-0.48, 0.0, 2.4, 6.0}) {
        const auto W = vm_matrix(g, {kappa}, 4);
        for (std::size_t h = 0; h <= 4; ++h) {
            CHECK(W(h, h) == acvf_asymptotic_variance(g, h, {kappa}));
            for (std::size_t j = 0; j <= 4; ++j) CHECK(W(h, j) == W(j, h));
        }
    }
}

TEST_CASE("VM matrix is positive semidefinite", "[asymptotics]") {
    // kappa >= -2 bounds the excess kurtosis of any law; the MA(1) companion
    // attains kappa = 2.4, exponential innovations 6.
    std::vector<Acvf> models{ma1_acvf(), ar_model_acvf(std::vector<double>{0.5}, 1.0, 40),
                             ar_model_acvf(std::vector<double>{0.6, -0.3}, 2.0, 40),
                             ar_model_acvf(true_ar_coefficients_ma1(60), 4.0, 40)};
    for (const auto& g : models) {
        for (double kappa : {-0.48, 0.0, 2.4, 6.0}) {
            const std::size_t M = 6;
            const auto V = vm_matrix(g, {kappa}, M);
            Eigen::MatrixXd A(M + 1, M + 1);
            for (std::size_t i = 0; i <= M; ++i)
                for (std::size_t j = 0; j <= M; ++j) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = V(i, j);
            const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().minCoeff();
            CHECK(lo >= -1e-8 * A.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("midpoint quadrature", "[asymptotics]") {
    CHECK(integrate_0_pi([](double) { return 1.0; }) == Approx(pi).epsilon(1e-15));
    CHECK(integrate_0_pi([](double l) { return std::cos(2.0 * l); }) == Approx(0.0).margin(1e-12));
    CHECK(integrate_0_pi([](double l) { return l * l; }) == Approx(pi * pi * pi / 3.0).epsilon(1e-6));
}
