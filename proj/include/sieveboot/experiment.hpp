#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sieveboot/bootstrap.hpp"
#include "sieveboot/dgp.hpp"
#include "sieveboot/series.hpp"
#include "sieveboot/statistic.hpp"

namespace sieveboot {

/// Statistic selection as it appears in a config file.
///   name: mean | acvf | acf | ratio | spectral-density | product-lag-1 | acvf-gm | acf-gm
struct StatisticConfig {
    std::string name = "mean";
    std::size_t lag = 0;
    double frequency = 0.0;
    double bandwidth = 0.3;
    /// Spectral density only: second frequency (0 or pi) at which the truth
    /// law is also computed.
    std::optional<double> boundary_frequency;

    [[nodiscard]] Statistic build() const;
    [[nodiscard]] Statistic build_at(double lambda) const;
};

/// One pass/fail assertion on a finished run.
///
/// metric is one of
///   variance_ratio:<a>/<b>        Var(law a) / Var(law b)
///   variance_over_target:<a>      Var(law a) / analytic target of a
///   dk:<a>/<b>                    Kolmogorov distance between laws a and b
///   boundary_variance_ratio       (Var truth-boundary / f2(lambda_b)) / (Var truth / f2(lambda)) with
///                                 f2 the kernel-weighted local mean of f^2
///   boundary_variance_ratio_pointwise  same with f2 = f(lambda)^2
/// with methods bootstrap, oracle, truth, truth-boundary. The check passes
/// when lo <= value <= hi; `expected` records whether it is predicted to pass.
struct CheckSpec {
    std::string id;
    std::string metric;
    double lo = 0.0;
    double hi = 0.0;
    bool expected = true;
};

enum class Prediction { valid, invalid };

struct ExperimentConfig {
    std::string name = "custom";
    ModelSpec dgp;
    StatisticConfig statistic;
    std::size_t n = 2000;
    std::size_t B = 2000;
    std::size_t M = 2000;
    std::size_t R = 2000;
    OrderRule order_rule;
    std::uint64_t seed = 271828;
    std::string outputs = "out";
    /// Whether the bootstrap is predicted to reproduce the truth law.
    Prediction prediction = Prediction::valid;
    /// Empty means the default pair: bootstrap/truth variance ratio in
    /// [0.85, 1.15] and d_K(bootstrap, truth) <= 0.1.
    std::vector<CheckSpec> checks;

    [[nodiscard]] std::vector<CheckSpec> effective_checks() const;
};

/// Unknown keys, missing required fields and out-of-range values throw
/// ConfigError naming the offending field.
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::ordered_json to_json(const ExperimentConfig& c);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

struct AnalyticTarget {
    std::string id;  ///< sum_gamma, tau_L2, tau_tilde2, bartlett_v2, ratio_variance, spectral_variance, ...
    std::string formula;
    double value = 0.0;
    std::vector<std::string> methods;
};

/// Closed-form limits of Var(scale (T - theta)) for the model/statistic pair.
/// Empty when none applies (e.g. autocovariances of ARCH data).
[[nodiscard]] std::vector<AnalyticTarget> analytic_targets(const ModelSpec& model, const StatisticConfig& stat);

/// Population second-order structure of the data-generating process.
[[nodiscard]] SecondOrderModel model_second_order(const ModelSpec& model);

struct MethodSummary {
    std::string method;
    EmpiricalLaw law;
    double theta = 0.0;  ///< centring value of the law
    double variance = 0.0;
    double mean = 0.0;
    std::optional<AnalyticTarget> target;
};

struct PairDistance {
    std::string a;
    std::string b;
    double dk = 0.0;
};

struct CheckResult {
    CheckSpec spec;
    double value = 0.0;
    bool passed = false;

    [[nodiscard]] bool matches() const noexcept { return passed == spec.expected; }
};

struct Report {
    ExperimentConfig config;
    std::size_t p_used = 0;
    std::vector<MethodSummary> methods;
    std::vector<PairDistance> distances;
    std::vector<AnalyticTarget> targets;
    std::vector<CheckResult> checks;
    /// PASS, FAIL-AS-PREDICTED or UNEXPECTED.
    std::string verdict;
    double elapsed_seconds = 0.0;

    [[nodiscard]] bool ok() const noexcept;
    [[nodiscard]] const MethodSummary& method(std::string_view name) const;
    [[nodiscard]] double distance(std::string_view a, std::string_view b) const;
};

/// Bootstrap law on one data realization, companion-oracle law over M paths,
/// truth law over R fresh paths; deterministic given config.seed.
[[nodiscard]] Report run_experiment(const ExperimentConfig& config);

[[nodiscard]] nlohmann::ordered_json report_json(const Report& r);
/// Header: experiment,method,statistic,n,variance,dk_vs_truth,dk_vs_oracle,target,target_id,pass
[[nodiscard]] std::string summary_csv(const Report& r);
/// report.json, summary.csv and laws/<method>.csv under dir.
void write_report(const Report& r, const std::filesystem::path& dir);

[[nodiscard]] std::vector<std::string> list_presets();
/// Throws ConfigError for an unknown name.
[[nodiscard]] ExperimentConfig preset(std::string_view name);

}  // namespace sieveboot
