// Acceptance suite: one PASS/FAIL line per criterion. Monte Carlo criteria run
// the built-in presets at full scale; criterion 9 re-runs every preset.

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/companion.hpp"
#include "sieveboot/dgp.hpp"
#include "sieveboot/experiment.hpp"
#include "sieveboot/rng.hpp"
#include "sieveboot/series.hpp"
#include "sieveboot/spectral.hpp"

using namespace sieveboot;
namespace fs = std::filesystem;

namespace {

struct Line {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) ok = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << what << (cond ? "" : " [x]");
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

bool within(double v, double target, double rel) { return std::abs(v - target) <= rel * std::abs(target); }

class Runs {
public:
    explicit Runs(fs::path dir) : dir_(std::move(dir)) {}

    const Report& get(const std::string& name) {
        auto it = reports_.find(name);
        if (it != reports_.end()) return it->second;
        auto c = preset(name);
        auto r = run_experiment(c);
        write_report(r, dir_ / name);
        return reports_.emplace(name, std::move(r)).first->second;
    }

private:
    fs::path dir_;
    std::map<std::string, Report> reports_;
};

double target_of(const Report& r, const std::string& id) {
    for (const auto& t : r.targets) {
        if (t.id == id) return t.value;
    }
    return std::nan("");
}

double var(const Report& r, const char* method) { return r.method(method).variance; }

Line worked_example() {
    Line line;
    for (auto fam : {InnovationFamily::gaussian, InnovationFamily::centered_exponential}) {
        const InnovationSpec spec{fam, 1.0};
        const auto path = ma1_example(1'000'000, derive_seed(1, Stream::data, static_cast<std::uint64_t>(fam)), spec);
        const auto ve = path.ve.values().subspan(path.burnin);
        const double v = sample_acvf(ve, 0).gamma[0];
        const double k = sample_excess_kurtosis(ve);
        const std::string tag(to_string(fam));
        line.require(within(v, 4.0, 0.025), tag + " Var(ve)=" + fmt(v));
        if (fam == InnovationFamily::gaussian) {
            line.require(std::abs(k) <= 0.05, tag + " kurt(ve)=" + fmt(k, 3));
        } else {
            line.require(std::abs(k - 2.4) <= 0.2, tag + " kurt(ve)=" + fmt(k, 3));
        }
        double worst = 0.0;
        for (std::size_t t = path.burnin + 1; t < path.x.size(); ++t) {
            worst = std::max(worst, std::abs(path.x[t] - (path.ve[t] - 0.5 * path.ve[t - 1])));
        }
        line.require(worst <= 1e-8, tag + " max|X-(ve-ve/2)|=" + fmt(worst, 2));
    }
    return line;
}

Line mean_validity(Runs& runs) {
    Line line;
    const auto& arch = runs.get("mean-arch1");
    const double ra = var(arch, "bootstrap") / var(arch, "truth");
    line.require(ra >= 0.85 && ra <= 1.15, "arch1 Var*/Var=" + fmt(ra));
    const auto& ma = runs.get("mean-ma1");
    const double rm = var(ma, "bootstrap") / var(ma, "truth");
    line.require(rm >= 0.85 && rm <= 1.15, "ma1 Var*/Var=" + fmt(rm));
    line.require(within(var(ma, "bootstrap"), 1.0, 0.15), "ma1 Var*=" + fmt(var(ma, "bootstrap")) + " vs 1");
    line.require(within(var(ma, "truth"), 1.0, 0.15), "ma1 Var=" + fmt(var(ma, "truth")) + " vs 1");
    return line;
}

Line acvf_failure(Runs& runs) {
    Line line;
    const auto& r = runs.get("acvf0-ma1-exponential");
    line.require(within(var(r, "bootstrap"), 126.0, 0.15), "Var*=" + fmt(var(r, "bootstrap")) + " vs 126");
    line.require(within(var(r, "truth"), 216.0, 0.15), "Var=" + fmt(var(r, "truth")) + " vs 216");
    const double dbt = r.distance("bootstrap", "truth");
    const double dbo = r.distance("bootstrap", "oracle");
    line.require(dbt > 0.15, "dK(boot,truth)=" + fmt(dbt, 3) + " > 0.15");
    line.require(dbo <= 0.1, "dK(boot,oracle)=" + fmt(dbo, 3) + " <= 0.1");
    return line;
}

Line gaussian_repair(Runs& runs) {
    Line line;
    const auto& r = runs.get("acvf0-ma1-gaussian");
    for (const char* m : {"bootstrap", "oracle", "truth"}) {
        line.require(within(var(r, m), 66.0, 0.15), std::string(m) + " " + fmt(var(r, m)) + " vs 66");
    }
    const double d = r.distance("bootstrap", "truth");
    line.require(d <= 0.1, "dK(boot,truth)=" + fmt(d, 3));
    return line;
}

Line acf_validity(Runs& runs) {
    Line line;
    for (const char* name : {"acf1-ma1-exponential", "acf1-ma1-gaussian"}) {
        const auto& r = runs.get(name);
        for (const char* m : {"bootstrap", "oracle", "truth"}) {
            line.require(within(var(r, m), 0.6224, 0.15),
                         std::string(name).substr(9) + " " + m + " " + fmt(var(r, m)));
        }
    }
    return line;
}

Line ratio_validity(Runs& runs) {
    Line line;
    const auto& r = runs.get("ratio-ma1-exponential");
    const double target = target_of(r, "ratio_variance");
    const double d = r.distance("bootstrap", "truth");
    line.require(d <= 0.1, "dK(boot,truth)=" + fmt(d, 3));
    for (const char* m : {"bootstrap", "truth"}) {
        line.require(within(var(r, m), target, 0.15), std::string(m) + " " + fmt(var(r, m)) + " vs " + fmt(target));
    }
    return line;
}

Line spectral_validity(Runs& runs) {
    Line line;
    const auto& r = runs.get("spectral-density-ma1");
    const double ratio = var(r, "bootstrap") / var(r, "truth");
    line.require(ratio >= 0.8 && ratio <= 1.25, "Var*/Var=" + fmt(ratio));
    double boundary = std::nan("");
    for (const auto& c : r.checks) {
        if (c.spec.metric == "boundary_variance_ratio") boundary = c.value;
    }
    line.require(boundary >= 1.6 && boundary <= 2.4, "boundary/interior (f^2-normalised)=" + fmt(boundary));
    return line;
}

std::vector<double> dense_solve(const Acvf& g, std::size_t p) {
    Eigen::MatrixXd G(p, p);
    Eigen::VectorXd rhs(p);
    for (std::size_t i = 0; i < p; ++i) {
        rhs(static_cast<Eigen::Index>(i)) = g.gamma[i + 1];
        for (std::size_t j = 0; j < p; ++j) {
            G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g.gamma[i > j ? i - j : j - i];
        }
    }
    const Eigen::VectorXd a = G.ldlt().solve(rhs);
    return {a.data(), a.data() + a.size()};
}

Acvf ma1_acvf(std::size_t len) {
    Acvf g{{5.0, -2.0}, AcvfKind::theoretical};
    g.gamma.resize(len, 0.0);
    return g;
}

Line ar_algebra_suite() {
    Line line;
    Engine rng = make_engine(8);

    double ld = 0.0;
    int causal = 0;
    const int reps = 1000;
    for (int rep = 0; rep < reps; ++rep) {
        const std::size_t n = 30 + rng() % 400;
        const std::size_t p = 1 + rng() % 20;
        std::vector<double> x;
        if (rep % 2 == 0) {
            const auto s = ma1_example(n, rng(), {InnovationFamily::centered_exponential, 1.0});
            x.assign(s.x.values().begin(), s.x.values().end());
        } else {
            x = draw_innovations({}, n, rng());
            for (std::size_t t = 1; t < n; ++t) x[t] += 0.95 * x[t - 1];
        }
        const auto g = sample_acvf(x, p);
        const auto fit = yule_walker_fit(g, p);
        const auto dense = dense_solve(g, p);
        for (std::size_t k = 0; k < p; ++k) ld = std::max(ld, std::abs(fit.a[k] - dense[k]));
        bool ok = true;
        for (const auto& z : ar_polynomial_roots(fit.a)) ok = ok && std::abs(z) > 1.0;
        causal += ok ? 1 : 0;
    }
    line.require(ld <= 1e-10, "LD vs dense " + fmt(ld, 2));
    line.require(causal == reps, "causal YW fits " + std::to_string(causal) + "/" + std::to_string(reps));

    double conv = 0.0;
    for (const auto& a : std::vector<std::vector<double>>{{0.5}, {0.6, -0.3}, true_ar_coefficients_ma1(60), {1.2, -0.5, 0.1}}) {
        const std::size_t L = default_inversion_length(a);
        const auto inv = invert_ar_polynomial(a, L);
        for (std::size_t j = 0; j <= L; ++j) {
            double c = inv.alpha[j];
            for (std::size_t k = 1; k <= std::min(j, a.size()); ++k) c -= a[k - 1] * inv.alpha[j - k];
            conv = std::max(conv, std::abs(c - (j == 0 ? 1.0 : 0.0)));
        }
    }
    line.require(conv <= 1e-10, "inversion identity " + fmt(conv, 2));

    const double s30 = levinson_variance_path(ma1_acvf(31), 30)[30];
    line.require(std::abs(s30 - 4.0) < 1e-6, "|sigma2(30)-4|=" + fmt(std::abs(s30 - 4.0), 2));

    const auto a_true = true_ar_coefficients_ma1(200);
    double worst_ratio = 0.0;
    for (std::size_t p : {5u, 10u, 20u, 40u}) {
        const auto gap = baxter_gap(yule_walker_fit(ma1_acvf(p + 1), p), a_true, 0);
        worst_ratio = std::max(worst_ratio, gap.lhs / gap.rhs);
    }
    line.require(worst_ratio <= 10.0, "Baxter lhs/rhs max " + fmt(worst_ratio, 3));

    double parseval = 0.0;
    double gap = 0.0;
    for (std::size_t n : {64u, 1000u, 2001u}) {
        const auto x = draw_innovations({InnovationFamily::centered_exponential, 1.0}, n, n);
        const auto I = periodogram(x);
        double lhs = I.values[0];
        for (std::size_t j = 1; j < I.values.size(); ++j) lhs += (n % 2 == 0 && j == n / 2) ? I.values[j] : 2.0 * I.values[j];
        lhs *= 2.0 * std::numbers::pi / static_cast<double>(n);
        double energy = 0.0;
        for (double v : x) energy += v * v;
        parseval = std::max(parseval, std::abs(lhs - energy / static_cast<double>(n)));
        for (std::size_t h : {1u, 3u, 10u}) {
            double c = 0.0;
            for (std::size_t t = 0; t + h < n; ++t) c += x[t] * x[t + h];
            c /= static_cast<double>(n);
            const double m = integrated_periodogram(x, WeightFunction::cosine(h));
            gap = std::max(gap, std::abs(m - c) * static_cast<double>(n));
        }
    }
    line.require(parseval <= 1e-9, "Parseval " + fmt(parseval, 2));
    line.require(gap <= 5.0, "n*|M(I,2cos)-c(h)| max " + fmt(gap, 2));
    return line;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Line determinism(Runs& runs, const fs::path& dir) {
    Line line;
    for (const auto& name : list_presets()) {
        (void)runs.get(name);
        const auto again = run_experiment(preset(name));
        write_report(again, dir / (name + "-rerun"));
        const bool same = slurp(dir / name / "summary.csv") == slurp(dir / (name + "-rerun") / "summary.csv");
        line.require(same, name + (same ? " identical" : " differs"));
    }
    return line;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path workdir = "acceptance_runs";
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--workdir") workdir = argv[i + 1];
    }
    fs::create_directories(workdir);
    Runs runs(workdir);

    struct Criterion {
        int id;
        const char* title;
        std::function<Line()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "worked-example identities", worked_example},
        {2, "validity for the mean", [&] { return mean_validity(runs); }},
        {3, "failure for autocovariances", [&] { return acvf_failure(runs); }},
        {4, "Gaussian repair", [&] { return gaussian_repair(runs); }},
        {5, "autocorrelations on linear data", [&] { return acf_validity(runs); }},
        {6, "ratio statistics", [&] { return ratio_validity(runs); }},
        {7, "spectral density estimator", [&] { return spectral_validity(runs); }},
        {8, "AR-algebra property suite", ar_algebra_suite},
        {9, "determinism", [&] { return determinism(runs, workdir); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Line line;
        try {
            line = c.check();
        } catch (const std::exception& e) {
            line.require(false, std::string("exception: ") + e.what());
        }
        failed += line.ok ? 0 : 1;
        std::printf("criterion %d %s  %s: %s\n", c.id, line.ok ? "PASS" : "FAIL", c.title, line.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
