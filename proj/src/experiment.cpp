#include "sieveboot/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/asymptotics.hpp"
#include "sieveboot/companion.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/model_json.hpp"
#include "sieveboot/parallel.hpp"
#include "sieveboot/rng.hpp"
#include "sieveboot/simd.hpp"

namespace sieveboot {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

const std::vector<std::string_view> kStatisticNames = {"mean",     "acvf",          "acf",     "ratio",
                                                       "spectral-density", "product-lag-1", "acvf-gm", "acf-gm"};
const std::vector<std::string_view> kMethods = {"bootstrap", "oracle", "truth", "truth-boundary"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t read_count(const json& j, const std::string& key, const std::string& path, std::size_t def,
                       std::size_t min) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number_unsigned()) throw ConfigError(path + key, "expected a non-negative integer");
    const auto v = j[key].get<std::size_t>();
    if (v < min) throw ConfigError(path + key, "must be at least " + std::to_string(min));
    return v;
}

double read_number(const json& j, const std::string& key, const std::string& path, double def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_number()) throw ConfigError(path + key, "expected a number");
    return j[key].get<double>();
}

struct Metric {
    enum class Kind { variance_ratio, variance_over_target, dk, boundary_variance_ratio, boundary_variance_ratio_pointwise } kind;
    std::string a;
    std::string b;
};

bool is_method(std::string_view m) { return std::find(kMethods.begin(), kMethods.end(), m) != kMethods.end(); }

Metric parse_metric(const std::string& metric, const std::string& field) {
    if (metric == "boundary_variance_ratio") return {Metric::Kind::boundary_variance_ratio, "truth", "truth-boundary"};
    if (metric == "boundary_variance_ratio_pointwise") {
        return {Metric::Kind::boundary_variance_ratio_pointwise, "truth", "truth-boundary"};
    }
    const auto colon = metric.find(':');
    if (colon == std::string::npos) throw ConfigError(field, "unknown metric '" + metric + "'");
    const std::string head = metric.substr(0, colon);
    const std::string tail = metric.substr(colon + 1);
    if (head == "variance_over_target") {
        if (!is_method(tail)) throw ConfigError(field, "unknown method '" + tail + "'");
        return {Metric::Kind::variance_over_target, tail, {}};
    }
    const auto slash = tail.find('/');
    if (slash == std::string::npos) throw ConfigError(field, "expected <a>/<b> in '" + metric + "'");
    Metric m{Metric::Kind::dk, tail.substr(0, slash), tail.substr(slash + 1)};
    if (head == "variance_ratio") {
        m.kind = Metric::Kind::variance_ratio;
    } else if (head != "dk") {
        throw ConfigError(field, "unknown metric '" + metric + "'");
    }
    if (!is_method(m.a)) throw ConfigError(field, "unknown method '" + m.a + "'");
    if (!is_method(m.b)) throw ConfigError(field, "unknown method '" + m.b + "'");
    return m;
}

std::vector<std::string> metric_methods(const Metric& m) {
    if (m.kind == Metric::Kind::variance_over_target) return {m.a};
    return {m.a, m.b};
}

bool at_boundary(double lambda) { return lambda == 0.0 || lambda == kPi; }

// int K_h(u)^2 f(lambda - u)^2 du / int K_h^2: the squared density as seen
// through the kernel window, which the finite-bandwidth variance scales with.
double smoothed_squared_density(const SpectralDensity& f, const KernelSpec& k, double lambda) {
    const std::size_t nodes = 2048;
    const double reach = kPi * k.bandwidth;
    const double step = 2.0 * reach / static_cast<double>(nodes);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double u = -reach + (static_cast<double>(i) + 0.5) * step;
        const double w = k.scaled(u) * k.scaled(u);
        const double v = f(lambda - u);
        num += w * v * v;
        den += w;
    }
    return num / den;
}

// ACVF long enough for every truncated sum of the asymptotics module.
Acvf full_acvf(const ModelSpec& model) {
    const auto so = model_second_order(model);
    switch (model.family) {
        case ModelFamily::linear: return so.acvf(model.coefficients.size());
        case ModelFamily::ar: return so.acvf(std::max<std::size_t>(default_inversion_length(model.coefficients), 1));
        case ModelFamily::arch1: return so.acvf(0);
    }
    return so.acvf(0);
}

// Excess kurtosis of the companion innovations, when known in closed form.
std::optional<double> companion_kurtosis(const ModelSpec& model) {
    switch (model.family) {
        case ModelFamily::linear: {
            if (model.is_ma1_example()) return ma1_companion_kurtosis(model.innovation.raw_fourth_moment_ratio());
            std::vector<double> neg_b(model.coefficients.size());
            for (std::size_t j = 0; j < neg_b.size(); ++j) neg_b[j] = -model.coefficients[j];
            if (neg_b.empty() || min_modulus_on_disk(neg_b, 1.0) > 0.0) return model.innovation.excess_kurtosis();
            return std::nullopt;
        }
        case ModelFamily::ar: return model.innovation.excess_kurtosis();
        case ModelFamily::arch1: return std::nullopt;
    }
    return std::nullopt;
}

enum class TargetKind { mean, acvf, acf, ratio, spectral };

TargetKind target_kind(const StatisticConfig& s, std::size_t& lag) {
    lag = s.lag;
    if (s.name == "mean") return TargetKind::mean;
    if (s.name == "acvf" || s.name == "acvf-gm") return TargetKind::acvf;
    if (s.name == "product-lag-1") {
        lag = 1;
        return TargetKind::acvf;
    }
    if (s.name == "acf" || s.name == "acf-gm") return TargetKind::acf;
    if (s.name == "ratio") return TargetKind::ratio;
    return TargetKind::spectral;
}

void check_statistic(const StatisticConfig& s, const std::string& path) {
    if (std::find(kStatisticNames.begin(), kStatisticNames.end(), s.name) == kStatisticNames.end()) {
        throw ConfigError(path + "name", "unknown statistic '" + s.name + "'");
    }
    if (s.name == "spectral-density") {
        if (!(s.frequency >= 0.0 && s.frequency <= kPi)) throw ConfigError(path + "frequency", "must lie in [0, pi]");
        if (!(s.bandwidth > 0.0 && s.bandwidth <= kPi)) throw ConfigError(path + "bandwidth", "must lie in (0, pi]");
    }
    if (s.boundary_frequency) {
        if (s.name != "spectral-density") {
            throw ConfigError(path + "boundary_frequency", "only valid for spectral-density");
        }
        if (!at_boundary(*s.boundary_frequency)) throw ConfigError(path + "boundary_frequency", "must be 0 or pi");
    }
}

ExperimentConfig make_preset(std::string name, ModelSpec dgp, StatisticConfig stat, Prediction prediction,
                             std::vector<CheckSpec> checks) {
    ExperimentConfig c;
    c.name = std::move(name);
    c.dgp = std::move(dgp);
    c.statistic = std::move(stat);
    c.prediction = prediction;
    c.checks = std::move(checks);
    c.outputs = "out/" + c.name;
    c.order_rule = {OrderMode::fixed, OrderRule::p_max(c.n)};
    return c;
}

CheckSpec within(std::string id, std::string metric, double lo, double hi, bool expected = true) {
    return {std::move(id), std::move(metric), lo, hi, expected};
}

}  // namespace

Statistic StatisticConfig::build() const { return build_at(frequency); }

Statistic StatisticConfig::build_at(double lambda) const {
    if (name == "mean") return Statistic::mean();
    if (name == "acvf") return Statistic::acvf(lag);
    if (name == "acf") return Statistic::acf(lag);
    if (name == "ratio") return Statistic::ratio_cosine(lag);
    if (name == "spectral-density") return Statistic::spectral_density(lambda, KernelSpec{KernelShape::epanechnikov_pi, bandwidth});
    if (name == "product-lag-1") return Statistic::from_descriptor(StatisticDescriptor::product_lag1());
    if (name == "acvf-gm") return Statistic::from_descriptor(StatisticDescriptor::acvf_lag(lag));
    if (name == "acf-gm") return Statistic::from_descriptor(StatisticDescriptor::acf_lag(lag));
    throw ConfigError("statistic.name", "unknown statistic '" + name + "'");
}

std::vector<CheckSpec> ExperimentConfig::effective_checks() const {
    if (!checks.empty()) return checks;
    return {within("variance_ratio_bootstrap_truth", "variance_ratio:bootstrap/truth", 0.85, 1.15),
            within("dk_bootstrap_truth", "dk:bootstrap/truth", 0.0, 0.1)};
}

ExperimentConfig config_from_json(const json& j) {
    reject_unknown_keys(j,
                        {"name", "dgp", "statistic", "n", "B", "M", "R", "order_rule", "seed", "outputs",
                         "prediction", "checks"},
                        "config");
    ExperimentConfig c;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ConfigError("name", "expected a string");
        c.name = j["name"].get<std::string>();
    }
    if (!j.contains("dgp")) throw ConfigError("dgp", "required");
    c.dgp = model_spec_from_json(j["dgp"], "dgp");

    if (j.contains("statistic")) {
        const auto& s = j["statistic"];
        reject_unknown_keys(s, {"name", "lag", "frequency", "bandwidth", "boundary_frequency"}, "statistic");
        if (s.contains("name")) {
            if (!s["name"].is_string()) throw ConfigError("statistic.name", "expected a string");
            c.statistic.name = s["name"].get<std::string>();
        }
        c.statistic.lag = read_count(s, "lag", "statistic.", 0, 0);
        c.statistic.frequency = read_number(s, "frequency", "statistic.", 0.0);
        c.statistic.bandwidth = read_number(s, "bandwidth", "statistic.", 0.3);
        if (s.contains("boundary_frequency")) {
            c.statistic.boundary_frequency = read_number(s, "boundary_frequency", "statistic.", 0.0);
        }
    }
    check_statistic(c.statistic, "statistic.");

    c.n = read_count(j, "n", "", c.n, 100);
    c.B = read_count(j, "B", "", c.B, 200);
    c.M = read_count(j, "M", "", c.M, 200);
    c.R = read_count(j, "R", "", c.R, 200);
    if (c.statistic.lag + 1 > c.n) throw ConfigError("statistic.lag", "must be below n");

    if (j.contains("order_rule")) {
        const auto& o = j["order_rule"];
        reject_unknown_keys(o, {"mode", "fixed_p"}, "order_rule");
        if (o.contains("mode")) {
            if (!o["mode"].is_string()) throw ConfigError("order_rule.mode", "expected a string");
            const auto mode = o["mode"].get<std::string>();
            if (mode == "fixed") {
                c.order_rule.mode = OrderMode::fixed;
            } else if (mode == "aic_capped") {
                c.order_rule.mode = OrderMode::aic_capped;
            } else {
                throw ConfigError("order_rule.mode", "expected fixed or aic_capped; got '" + mode + "'");
            }
        }
        if (o.contains("fixed_p")) c.order_rule.fixed_p = read_count(o, "fixed_p", "order_rule.", 1, 1);
        if (c.order_rule.mode == OrderMode::fixed && !c.order_rule.fixed_p) {
            throw ConfigError("order_rule.fixed_p", "required when mode is fixed");
        }
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("outputs")) {
        if (!j["outputs"].is_string()) throw ConfigError("outputs", "expected a path string");
        c.outputs = j["outputs"].get<std::string>();
    }
    if (j.contains("prediction")) {
        const auto p = j["prediction"].is_string() ? j["prediction"].get<std::string>() : std::string{};
        if (p == "valid") {
            c.prediction = Prediction::valid;
        } else if (p == "invalid") {
            c.prediction = Prediction::invalid;
        } else {
            throw ConfigError("prediction", "expected valid or invalid");
        }
    }
    if (j.contains("checks")) {
        if (!j["checks"].is_array()) throw ConfigError("checks", "expected an array");
        for (std::size_t i = 0; i < j["checks"].size(); ++i) {
            const auto& cj = j["checks"][i];
            const std::string path = "checks[" + std::to_string(i) + "]";
            reject_unknown_keys(cj, {"id", "metric", "lo", "hi", "expected"}, path);
            CheckSpec cs;
            if (!cj.contains("id") || !cj["id"].is_string()) throw ConfigError(path + ".id", "required string");
            if (!cj.contains("metric") || !cj["metric"].is_string()) {
                throw ConfigError(path + ".metric", "required string");
            }
            cs.id = cj["id"].get<std::string>();
            cs.metric = cj["metric"].get<std::string>();
            (void)parse_metric(cs.metric, path + ".metric");
            if (!cj.contains("lo") || !cj.contains("hi")) throw ConfigError(path, "lo and hi are required");
            cs.lo = read_number(cj, "lo", path + ".", 0.0);
            cs.hi = read_number(cj, "hi", path + ".", 0.0);
            if (!(cs.lo <= cs.hi)) throw ConfigError(path + ".hi", "must not be below lo");
            if (cj.contains("expected")) {
                if (!cj["expected"].is_boolean()) throw ConfigError(path + ".expected", "expected a boolean");
                cs.expected = cj["expected"].get<bool>();
            }
            c.checks.push_back(std::move(cs));
        }
    }
    for (std::size_t i = 0; i < c.checks.size(); ++i) {
        const auto m = parse_metric(c.checks[i].metric, "checks[" + std::to_string(i) + "].metric");
        const bool needs_boundary = m.a == "truth-boundary" || m.b == "truth-boundary";
        if (needs_boundary && !c.statistic.boundary_frequency) {
            throw ConfigError("checks[" + std::to_string(i) + "].metric",
                              "truth-boundary requires statistic.boundary_frequency");
        }
    }
    return c;
}

ordered_json to_json(const ExperimentConfig& c) {
    ordered_json stat = {{"name", c.statistic.name}, {"lag", c.statistic.lag}};
    if (c.statistic.name == "spectral-density") {
        stat["frequency"] = c.statistic.frequency;
        stat["bandwidth"] = c.statistic.bandwidth;
        if (c.statistic.boundary_frequency) stat["boundary_frequency"] = *c.statistic.boundary_frequency;
    }
    ordered_json rule = {{"mode", std::string(to_string(c.order_rule.mode))}};
    if (c.order_rule.fixed_p) rule["fixed_p"] = *c.order_rule.fixed_p;
    const auto dgp = to_json(c.dgp);
    ordered_json out;
    out["name"] = c.name;
    out["dgp"] = {{"family", dgp["family"]},
                  {"coefficients", dgp["coefficients"]},
                  {"innovation", {{"family", dgp["innovation"]["family"]}, {"scale", dgp["innovation"]["scale"]}}},
                  {"burnin", dgp["burnin"]}};
    out["statistic"] = stat;
    out["n"] = c.n;
    out["B"] = c.B;
    out["M"] = c.M;
    out["R"] = c.R;
    out["order_rule"] = rule;
    out["seed"] = c.seed;
    out["outputs"] = c.outputs;
    out["prediction"] = c.prediction == Prediction::valid ? "valid" : "invalid";
    out["checks"] = ordered_json::array();
    for (const auto& cs : c.checks) {
        out["checks"].push_back(
            {{"id", cs.id}, {"metric", cs.metric}, {"lo", cs.lo}, {"hi", cs.hi}, {"expected", cs.expected}});
    }
    return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    return config_from_json(j);
}

SecondOrderModel model_second_order(const ModelSpec& model) {
    switch (model.family) {
        case ModelFamily::linear: return SecondOrderModel::from_linear(model.coefficients, model.innovation.variance());
        case ModelFamily::ar: return SecondOrderModel::from_ar(model.coefficients, model.innovation.variance());
        case ModelFamily::arch1: return SecondOrderModel::white_noise(model.arch1().variance());
    }
    throw DomainError("model_second_order: unknown family");
}

std::vector<AnalyticTarget> analytic_targets(const ModelSpec& model, const StatisticConfig& stat) {
    check_statistic(stat, "statistic.");
    std::vector<AnalyticTarget> out;
    const std::vector<std::string> all = {"bootstrap", "oracle", "truth"};
    const bool linear_family = model.family != ModelFamily::arch1;
    std::size_t h = 0;
    switch (target_kind(stat, h)) {
        case TargetKind::mean:
            out.push_back({"sum_gamma", "gamma(0) + 2 sum_{h>=1} gamma(h)", mean_asymptotic_variance(full_acvf(model)),
                           all});
            break;
        case TargetKind::acvf: {
            if (!linear_family) break;
            auto g = full_acvf(model);
            if (g.gamma.size() <= h) g = model_second_order(model).acvf(h);
            const std::string formula = "kappa gamma(h)^2 + sum_k [gamma(k)^2 + gamma(k+h) gamma(k-h)], h = " +
                                        std::to_string(h);
            out.push_back({"tau_L2", formula + ", kappa = excess kurtosis of e",
                           acvf_asymptotic_variance(g, h, {model.innovation.excess_kurtosis()}), {"truth"}});
            if (auto kc = companion_kurtosis(model)) {
                out.push_back({"tau_tilde2", formula + ", kappa = excess kurtosis of the Wold innovations",
                               acvf_asymptotic_variance(g, h, {*kc}), {"bootstrap", "oracle"}});
            }
            break;
        }
        case TargetKind::acf: {
            if (!linear_family) break;
            auto g = full_acvf(model);
            if (g.gamma.size() <= h) g = model_second_order(model).acvf(h);
            std::vector<double> rho(g.gamma.size());
            for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = g.gamma[k] / g.gamma[0];
            rho[0] = 1.0;
            out.push_back({"bartlett_v2",
                           "sum_k (1 + 2 rho(h)^2) rho(k)^2 + rho(k-h) rho(k+h) - 4 rho(h) rho(k) rho(k+h), h = " +
                               std::to_string(h),
                           bartlett_variance(rho, h), all});
            break;
        }
        case TargetKind::ratio: {
            if (!linear_family) break;
            out.push_back({"ratio_variance",
                           "2 pi int_0^pi psi^2 f^2 / (int_0^pi f)^4, psi = phi int f - int phi f, phi = 2 cos(" +
                               std::to_string(h) + " lambda)",
                           ratio_statistic_variance(model_second_order(model).density, WeightFunction::cosine(h)),
                           all});
            break;
        }
        case TargetKind::spectral: {
            const auto f = model_second_order(model).density;
            const KernelSpec k{KernelShape::epanechnikov_pi, stat.bandwidth};
            out.push_back({"spectral_variance", "(1 + delta) f(lambda)^2 2 pi int K^2, lambda = " + fmt(stat.frequency),
                           spectral_estimator_variance(f(stat.frequency), at_boundary(stat.frequency), k), all});
            if (stat.boundary_frequency) {
                const double lb = *stat.boundary_frequency;
                out.push_back({"spectral_variance_boundary",
                               "(1 + delta) f(lambda)^2 2 pi int K^2, lambda = " + fmt(lb),
                               spectral_estimator_variance(f(lb), true, k), {"truth-boundary"}});
            }
            break;
        }
    }
    return out;
}

bool Report::ok() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.matches(); });
}

const MethodSummary& Report::method(std::string_view name) const {
    for (const auto& m : methods) {
        if (m.method == name) return m;
    }
    throw DomainError("Report: no method '" + std::string(name) + "'");
}

double Report::distance(std::string_view a, std::string_view b) const {
    if (a == b) return 0.0;
    for (const auto& d : distances) {
        if ((d.a == a && d.b == b) || (d.a == b && d.b == a)) return d.dk;
    }
    throw DomainError("Report: no distance between '" + std::string(a) + "' and '" + std::string(b) + "'");
}

Report run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.config = config;
    const auto checks = config.effective_checks();
    const auto stat = config.statistic.build();
    if (config.n < stat.min_length()) throw ConfigError("n", "too small for the statistic");
    report.targets = analytic_targets(config.dgp, config.statistic);

    const auto target_for = [&](const std::string& method) -> std::optional<AnalyticTarget> {
        for (const auto& t : report.targets) {
            if (std::find(t.methods.begin(), t.methods.end(), method) != t.methods.end()) return t;
        }
        return std::nullopt;
    };
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto m = parse_metric(checks[i].metric, "checks[" + std::to_string(i) + "].metric");
        if (m.kind == Metric::Kind::variance_over_target && !target_for(m.a)) {
            throw ConfigError("checks[" + std::to_string(i) + "].metric",
                              "no analytic target for method '" + m.a + "' with this model and statistic");
        }
    }

    const std::uint64_t seed = config.seed;
    const auto data = simulate(config.dgp, config.n, derive_seed(seed, Stream::data, 0));

    auto boot = bootstrap_distribution(data, stat, config.B, config.order_rule, derive_seed(seed, Stream::bootstrap, 0));
    report.p_used = boot.p_used;

    const auto companion = companion_for(config.dgp, derive_seed(seed, Stream::oracle, 0));
    auto oracle = companion_distribution(companion, stat, config.n, config.M, derive_seed(seed, Stream::oracle, 1));

    // Truth: R fresh paths, centred at the model value.
    const auto population = model_second_order(config.dgp);
    const auto simulate_dgp = [&](std::size_t len, std::uint64_t s) { return simulate(config.dgp, len, s); };
    const auto center = [&](const Statistic& s) {
        if (auto v = s.model_value(population)) return *v;
        return auxiliary_center(s, config.n, simulate_dgp, derive_seed(seed, Stream::truth, config.R));
    };
    const double theta = center(stat);
    std::optional<Statistic> boundary;
    double theta_b = 0.0;
    if (config.statistic.boundary_frequency) {
        boundary = config.statistic.build_at(*config.statistic.boundary_frequency);
        theta_b = center(*boundary);
    }
    const double scale = stat.scale(config.n);
    std::vector<double> truth(config.R);
    std::vector<double> truth_b(boundary ? config.R : 0);
    parallel_for(config.R, [&](std::size_t r) {
        const auto x = simulate(config.dgp, config.n, derive_seed(seed, Stream::truth, r));
        truth[r] = scale * (stat.evaluate(x) - theta);
        if (boundary) truth_b[r] = boundary->scale(config.n) * (boundary->evaluate(x) - theta_b);
    });

    const auto summarize = [&](std::string name, EmpiricalLaw law, double th) {
        MethodSummary m;
        m.method = std::move(name);
        m.variance = law.variance();
        m.mean = law.mean();
        m.law = std::move(law);
        m.theta = th;
        m.target = target_for(m.method);
        return m;
    };
    report.methods.push_back(summarize("bootstrap", std::move(boot.law), boot.theta_star));
    report.methods.push_back(summarize("oracle", std::move(oracle.law), oracle.theta_tilde));
    report.methods.push_back(summarize("truth", ecdf(truth), theta));
    if (boundary) report.methods.push_back(summarize("truth-boundary", ecdf(truth_b), theta_b));

    for (std::size_t i = 0; i < report.methods.size(); ++i) {
        for (std::size_t j = i + 1; j < report.methods.size(); ++j) {
            report.distances.push_back({report.methods[i].method, report.methods[j].method,
                                        kolmogorov_distance(report.methods[i].law, report.methods[j].law)});
        }
    }

    for (const auto& cs : checks) {
        const auto m = parse_metric(cs.metric, "checks");
        CheckResult cr;
        cr.spec = cs;
        switch (m.kind) {
            case Metric::Kind::variance_ratio:
                cr.value = report.method(m.a).variance / report.method(m.b).variance;
                break;
            case Metric::Kind::variance_over_target:
                cr.value = report.method(m.a).variance / report.method(m.a).target->value;
                break;
            case Metric::Kind::dk: cr.value = report.distance(m.a, m.b); break;
            case Metric::Kind::boundary_variance_ratio: {
                const auto& k = stat.kernel();
                const double fi2 = smoothed_squared_density(population.density, k, config.statistic.frequency);
                const double fb2 =
                    smoothed_squared_density(population.density, k, *config.statistic.boundary_frequency);
                cr.value = (report.method("truth-boundary").variance / fb2) / (report.method("truth").variance / fi2);
                break;
            }
            case Metric::Kind::boundary_variance_ratio_pointwise: {
                const double fi = population.density(config.statistic.frequency);
                const double fb = population.density(*config.statistic.boundary_frequency);
                cr.value = (report.method("truth-boundary").variance / (fb * fb)) /
                           (report.method("truth").variance / (fi * fi));
                break;
            }
        }
        cr.passed = cr.value >= cs.lo && cr.value <= cs.hi;
        report.checks.push_back(std::move(cr));
    }

    if (!report.ok()) {
        report.verdict = "UNEXPECTED";
    } else {
        report.verdict = config.prediction == Prediction::invalid ? "FAIL-AS-PREDICTED" : "PASS";
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ordered_json report_json(const Report& r) {
    ordered_json out;
    out["experiment"] = r.config.name;
    out["config"] = to_json(r.config);
    out["statistic"] = r.config.statistic.build().name();
    out["p_used"] = r.p_used;
    out["methods"] = ordered_json::array();
    for (const auto& m : r.methods) {
        ordered_json mj = {{"method", m.method}, {"size", m.law.size()}, {"theta", m.theta},
                           {"variance", m.variance}, {"mean", m.mean}};
        mj["target_id"] = m.target ? ordered_json(m.target->id) : ordered_json(nullptr);
        mj["target"] = m.target ? ordered_json(m.target->value) : ordered_json(nullptr);
        out["methods"].push_back(std::move(mj));
    }
    out["distances"] = ordered_json::array();
    for (const auto& d : r.distances) out["distances"].push_back({{"a", d.a}, {"b", d.b}, {"dk", d.dk}});
    out["targets"] = ordered_json::array();
    for (const auto& t : r.targets) {
        out["targets"].push_back({{"id", t.id}, {"formula", t.formula}, {"value", t.value}, {"methods", t.methods}});
    }
    out["checks"] = ordered_json::array();
    for (const auto& c : r.checks) {
        out["checks"].push_back({{"id", c.spec.id},
                                 {"metric", c.spec.metric},
                                 {"value", c.value},
                                 {"lo", c.spec.lo},
                                 {"hi", c.spec.hi},
                                 {"expected", c.spec.expected},
                                 {"passed", c.passed},
                                 {"matches_expectation", c.matches()}});
    }
    out["verdict"] = r.verdict;
    out["runtime"] = {{"elapsed_seconds", r.elapsed_seconds},
                      {"workers", worker_count()},
                      {"simd", std::string(simd::isa_name(simd::active().isa))}};
    return out;
}

std::string summary_csv(const Report& r) {
    std::ostringstream os;
    os << "experiment,method,statistic,n,variance,dk_vs_truth,dk_vs_oracle,target,target_id,pass\n";
    const auto stat_name = r.config.statistic.build().name();
    for (const auto& m : r.methods) {
        bool pass = true;
        for (const auto& c : r.checks) {
            const auto methods = metric_methods(parse_metric(c.spec.metric, "checks"));
            if (std::find(methods.begin(), methods.end(), m.method) != methods.end() && !c.matches()) pass = false;
        }
        os << r.config.name << ',' << m.method << ',' << stat_name << ',' << r.config.n << ',' << fmt(m.variance)
           << ',' << fmt(r.distance(m.method, "truth")) << ',' << fmt(r.distance(m.method, "oracle")) << ','
           << (m.target ? fmt(m.target->value) : "") << ',' << (m.target ? m.target->id : "") << ','
           << (pass ? "true" : "false") << '\n';
    }
    return os.str();
}

void write_report(const Report& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "laws");
    {
        std::ofstream out(dir / "report.json");
        out << report_json(r).dump(2) << '\n';
    }
    {
        std::ofstream out(dir / "summary.csv");
        out << summary_csv(r);
    }
    for (const auto& m : r.methods) {
        std::ofstream out(dir / "laws" / (m.method + ".csv"));
        out << "value\n";
        for (double v : m.law.sample()) out << fmt(v) << '\n';
    }
}

std::vector<std::string> list_presets() {
    return {"mean-arch1",         "mean-ma1",           "acvf0-ma1-exponential", "acvf0-ma1-gaussian",
            "acf1-ma1-exponential", "acf1-ma1-gaussian", "ratio-ma1-exponential", "spectral-density-ma1"};
}

ExperimentConfig preset(std::string_view name) {
    const auto ma1 = [](InnovationFamily f) { return ModelSpec::ma1_example(f); };
    const auto expo = InnovationFamily::centered_exponential;
    const auto gauss = InnovationFamily::gaussian;
    const auto variance_bands = [](std::initializer_list<const char*> methods) {
        std::vector<CheckSpec> out;
        for (const char* m : methods) {
            out.push_back(within(std::string("variance_over_target_") + m, std::string("variance_over_target:") + m,
                                 0.85, 1.15));
        }
        return out;
    };

    if (name == "mean-arch1") {
        ModelSpec arch{ModelFamily::arch1, {1.0, 0.3}, {gauss, 1.0}, default_burnin(1)};
        return make_preset(std::string(name), arch, StatisticConfig{"mean", 0, 0.0, 0.3, std::nullopt}, Prediction::valid,
                           {within("variance_ratio_bootstrap_truth", "variance_ratio:bootstrap/truth", 0.85, 1.15)});
    }
    if (name == "mean-ma1") {
        auto checks = variance_bands({"bootstrap", "truth"});
        checks.insert(checks.begin(),
                      within("variance_ratio_bootstrap_truth", "variance_ratio:bootstrap/truth", 0.85, 1.15));
        return make_preset(std::string(name), ma1(expo), StatisticConfig{"mean", 0, 0.0, 0.3, std::nullopt}, Prediction::valid, checks);
    }
    if (name == "acvf0-ma1-exponential") {
        auto checks = variance_bands({"bootstrap", "truth"});
        checks.push_back(within("dk_bootstrap_truth_above", "dk:bootstrap/truth", 0.15, 1.0));
        checks.push_back(within("dk_bootstrap_oracle", "dk:bootstrap/oracle", 0.0, 0.1));
        checks.push_back(
            within("variance_ratio_bootstrap_truth", "variance_ratio:bootstrap/truth", 0.85, 1.15, false));
        return make_preset(std::string(name), ma1(expo), StatisticConfig{"acvf", 0, 0.0, 0.3, std::nullopt}, Prediction::invalid, checks);
    }
    if (name == "acvf0-ma1-gaussian") {
        auto checks = variance_bands({"bootstrap", "oracle", "truth"});
        checks.push_back(within("dk_bootstrap_truth", "dk:bootstrap/truth", 0.0, 0.1));
        return make_preset(std::string(name), ma1(gauss), StatisticConfig{"acvf", 0, 0.0, 0.3, std::nullopt}, Prediction::valid, checks);
    }
    if (name == "acf1-ma1-exponential" || name == "acf1-ma1-gaussian") {
        const auto fam = name == "acf1-ma1-exponential" ? expo : gauss;
        return make_preset(std::string(name), ma1(fam), StatisticConfig{"acf", 1, 0.0, 0.3, std::nullopt}, Prediction::valid,
                           variance_bands({"bootstrap", "oracle", "truth"}));
    }
    if (name == "ratio-ma1-exponential") {
        auto checks = variance_bands({"bootstrap", "truth"});
        checks.insert(checks.begin(), within("dk_bootstrap_truth", "dk:bootstrap/truth", 0.0, 0.1));
        return make_preset(std::string(name), ma1(expo), StatisticConfig{"ratio", 1, 0.0, 0.3, std::nullopt}, Prediction::valid, checks);
    }
    if (name == "spectral-density-ma1") {
        StatisticConfig s{"spectral-density", 0, kPi / 2.0, 0.4, kPi};
        return make_preset(std::string(name), ma1(gauss), s, Prediction::valid,
                           {within("variance_ratio_bootstrap_truth", "variance_ratio:bootstrap/truth", 0.8, 1.25),
                            within("boundary_variance_ratio", "boundary_variance_ratio", 1.6, 2.4)});
    }
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

}  // namespace sieveboot
