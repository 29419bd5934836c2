#include "sieveboot/ar_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "sieveboot/errors.hpp"
#include "sieveboot/simd.hpp"

namespace sieveboot {
namespace {

std::span<const double> trim_trailing_zeros(std::span<const double> a) {
    std::size_t p = a.size();
    while (p > 0 && a[p - 1] == 0.0) --p;
    return a.first(p);
}

// Eigenvalues of the companion matrix of the monic polynomial
// w^m + c[m-1] w^{m-1} + ... + c[0].
std::vector<std::complex<double>> monic_roots(std::span<const double> c) {
    const auto m = static_cast<Eigen::Index>(c.size());
    if (m == 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) comp(i, m - 1) = -c[static_cast<std::size_t>(i)];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) out.push_back(solver.eigenvalues()[i]);
    return out;
}

// Levinson-Durbin recursion on gamma(0..p). Returns the order-p coefficients
// and, when requested, the prediction variances v_0..v_p.
std::vector<double> levinson_durbin(const Acvf& acvf, std::size_t p, std::vector<double>* path,
                                    const char* who) {
    if (acvf.gamma.size() <= p) throw DomainError(std::string(who) + ": ACVF must extend to lag p");
    const double g0 = acvf.gamma[0];
    if (!(g0 > 0.0)) throw DegenerateSeriesError(std::string(who) + ": gamma(0) must be positive");
    const auto& g = acvf.gamma;
    std::vector<double> phi(p, 0.0);
    std::vector<double> prev(p, 0.0);
    double v = g0;
    if (path) path->assign(1, g0);
    for (std::size_t k = 1; k <= p; ++k) {
        double num = g[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j - 1] * g[k - j];
        const double kappa = num / v;
        phi[k - 1] = kappa;
        for (std::size_t j = 1; j < k; ++j) phi[j - 1] = prev[j - 1] - kappa * prev[k - j - 1];
        v *= (1.0 - kappa * kappa);
        if (!(v >= 1e-12 * g0)) {
            throw ConditioningError(std::string(who) + ": Toeplitz matrix numerically singular at order " +
                                    std::to_string(k));
        }
        if (path) path->push_back(v);
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(k), prev.begin());
    }
    return phi;
}

}  // namespace

ArFit yule_walker_fit(const Acvf& acvf, std::size_t p) {
    ArFit fit;
    fit.p = p;
    fit.a = levinson_durbin(acvf, p, nullptr, "yule_walker_fit");
    fit.source = acvf.kind;
    fit.sigma2 = innovation_variance_limit(acvf, fit.a);
    return fit;
}

std::vector<double> levinson_variance_path(const Acvf& acvf, std::size_t p) {
    std::vector<double> path;
    (void)levinson_durbin(acvf, p, &path, "levinson_variance_path");
    return path;
}

std::vector<double> true_ar_coefficients_ma1(std::size_t L) {
    std::vector<double> a(L);
    double w = 1.0;
    for (std::size_t j = 0; j < L; ++j) {
        w *= 0.5;
        a[j] = -w;
    }
    return a;
}

double innovation_variance_limit(const Acvf& acvf, std::span<const double> a) {
    double s = acvf.at(0);
    for (std::size_t k = 0; k < a.size(); ++k) s -= a[k] * acvf.at(static_cast<long>(k + 1));
    return s;
}

std::vector<std::complex<double>> ar_polynomial_roots(std::span<const double> a_in) {
    const auto a = trim_trailing_zeros(a_in);
    const std::size_t p = a.size();
    if (p == 0) return {};
    // mu^p - a1 mu^{p-1} - ... - ap has roots mu = 1 / z.
    std::vector<double> c(p);
    for (std::size_t k = 0; k < p; ++k) c[p - 1 - k] = -a[k];
    auto mus = monic_roots(c);
    std::vector<std::complex<double>> roots;
    roots.reserve(p);
    for (const auto& mu : mus) roots.push_back(1.0 / mu);
    return roots;
}

double min_modulus_on_disk(std::span<const double> a_in, double radius) {
    if (!(radius > 0.0)) throw DomainError("min_modulus_on_disk: radius must be positive");
    const auto a = trim_trailing_zeros(a_in);
    const std::size_t p = a.size();
    if (p == 0) return 1.0;
    for (const auto& z : ar_polynomial_roots(a)) {
        if (std::abs(z) <= radius) return 0.0;
    }

    // No zero in the disk, so the minimum of |A| sits on the boundary circle.
    // P(theta) = |A(r e^{i theta})|^2 = d_0 + 2 sum_m d_m cos(m theta).
    std::vector<double> c(p + 1);
    c[0] = 1.0;
    for (std::size_t k = 1; k <= p; ++k) c[k] = -a[k - 1];
    std::vector<double> d(p + 1, 0.0);
    for (std::size_t m = 0; m <= p; ++m) {
        for (std::size_t k = 0; k + m <= p; ++k) {
            d[m] += c[k] * c[k + m] * std::pow(radius, static_cast<double>(2 * k + m));
        }
    }
    const auto P = [&](double th) {
        double s = d[0];
        for (std::size_t m = 1; m <= p; ++m) s += 2.0 * d[m] * std::cos(static_cast<double>(m) * th);
        return s;
    };
    const auto dP = [&](double th) {
        double s = 0.0;
        for (std::size_t m = 1; m <= p; ++m) {
            s -= 2.0 * static_cast<double>(m) * d[m] * std::sin(static_cast<double>(m) * th);
        }
        return s;
    };
    const auto d2P = [&](double th) {
        double s = 0.0;
        for (std::size_t m = 1; m <= p; ++m) {
            const auto mm = static_cast<double>(m);
            s -= 2.0 * mm * mm * d[m] * std::cos(mm * th);
        }
        return s;
    };

    // Critical points: sum_m m d_m sin(m theta) = 0. With w = e^{i theta} and
    // a factor w^p this is a degree-2p polynomial whose unit-modulus roots
    // are the critical angles.
    std::vector<double> candidates{0.0, std::numbers::pi};
    const double lead = static_cast<double>(p) * d[p];
    if (lead != 0.0) {
        std::vector<double> q(2 * p, 0.0);  // monic coefficients below w^{2p}
        for (std::size_t m = 1; m <= p; ++m) {
            const double coef = static_cast<double>(m) * d[m] / lead;
            if (p + m < 2 * p) q[p + m] = coef;
            q[p - m] = -coef;
        }
        for (const auto& w : monic_roots(q)) candidates.push_back(std::arg(w));
    }
    // Equally spaced starts guard against critical points the eigen-solver
    // resolves poorly when d_p is tiny relative to d_0.
    const std::size_t starts = 8 * p + 8;
    for (std::size_t k = 0; k < starts; ++k) {
        candidates.push_back(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(starts));
    }

    double best = P(0.0);
    for (double th : candidates) {
        double val = P(th);
        for (int it = 0; it < 30; ++it) {
            const double curv = d2P(th);
            if (!(curv > 0.0)) break;
            const double step = dP(th) / curv;
            const double next = th - step;
            const double nv = P(next);
            if (!(nv <= val)) break;
            th = next;
            val = nv;
            if (std::abs(step) < 1e-15) break;
        }
        best = std::min(best, val);
    }
    return std::sqrt(std::max(best, 0.0));
}

std::size_t default_inversion_length(std::span<const double> a_in) {
    const auto a = trim_trailing_zeros(a_in);
    if (a.empty()) return 0;
    double r_min = std::numeric_limits<double>::infinity();
    for (const auto& z : ar_polynomial_roots(a)) r_min = std::min(r_min, std::abs(z));
    constexpr std::size_t cap = 10000;
    if (!(r_min > 1.0)) return cap;
    const double steps = std::log(1e-12) / std::log(1.0 / r_min);
    const auto L = static_cast<std::size_t>(std::ceil(1.5 * steps)) + a.size() + 16;
    return std::min(L, cap);
}

MaInversion invert_ar_polynomial(std::span<const double> a_in, std::size_t L) {
    const auto a = trim_trailing_zeros(a_in);
    const std::size_t p = a.size();
    double r_min = std::numeric_limits<double>::infinity();
    for (const auto& z : ar_polynomial_roots(a)) {
        r_min = std::min(r_min, std::abs(z));
        if (std::abs(z) <= 1.0) {
            throw InversionError("invert_ar_polynomial: AR polynomial has a root in the closed unit disk");
        }
    }
    MaInversion inv;
    inv.L = L;
    inv.alpha.assign(L + 1, 0.0);
    inv.alpha[0] = 1.0;
    // alpha_j = sum_{k=1}^{min(j,p)} a_k alpha_{j-k}; a is reversed so the sum
    // is a contiguous dot product over the most recent p coefficients.
    std::vector<double> a_rev(a.rbegin(), a.rend());
    for (std::size_t j = 1; j <= L; ++j) {
        const std::size_t k = std::min(j, p);
        inv.alpha[j] = simd::dot(std::span<const double>(a_rev).last(k),
                                 std::span<const double>(inv.alpha).subspan(j - k, k));
    }
    inv.decay_bound = p == 0 ? 0.0 : std::pow(1.0 / r_min, static_cast<double>(L));
    return inv;
}

BaxterGap baxter_gap(const ArFit& fit, std::span<const double> a_true, int r) {
    BaxterGap gap;
    const auto truth = [&](std::size_t k) { return k <= a_true.size() ? a_true[k - 1] : 0.0; };
    for (std::size_t k = 1; k <= fit.p; ++k) {
        gap.lhs += std::pow(1.0 + static_cast<double>(k), r) * std::abs(fit.a[k - 1] - truth(k));
    }
    for (std::size_t k = fit.p + 1; k <= a_true.size(); ++k) {
        gap.rhs += std::pow(1.0 + static_cast<double>(k), r) * std::abs(a_true[k - 1]);
    }
    return gap;
}

std::vector<double> residuals(std::span<const double> x, const ArFit& fit) {
    const std::size_t n = x.size();
    const std::size_t p = fit.a.size();
    if (n <= p) throw DomainError("residuals: series must be longer than the AR order");
    std::vector<double> a_rev(fit.a.rbegin(), fit.a.rend());
    std::vector<double> eps(n - p);
    for (std::size_t t = p; t < n; ++t) {
        eps[t - p] = x[t] - simd::dot(a_rev, x.subspan(t - p, p));
    }
    const double mu = compensated_sum(eps) / static_cast<double>(eps.size());
    for (double& e : eps) e -= mu;
    return eps;
}

std::vector<double> residuals(const Series& s, const ArFit& fit) { return residuals(s.values(), fit); }

}  // namespace sieveboot
