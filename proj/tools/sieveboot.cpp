// sieveboot: Monte Carlo harness for the AR-sieve bootstrap.
//
//   sieveboot run --config exp.json [--seed S] [--out DIR]
//   sieveboot preset <name> [--seed S] [--out DIR] [--dump-config]
//   sieveboot list
//   sieveboot asymptotics --model <file|json> --statistic <name> [--lag h]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/experiment.hpp"
#include "sieveboot/model_json.hpp"
#include "sieveboot/parallel.hpp"

namespace {

using namespace sieveboot;

int execute(ExperimentConfig config, const std::optional<std::uint64_t>& seed, const std::optional<std::string>& out) {
    if (seed) config.seed = *seed;
    if (out) config.outputs = *out;
    const auto report = run_experiment(config);
    write_report(report, config.outputs);
    std::cout << summary_csv(report);
    for (const auto& c : report.checks) {
        std::printf("%-34s %-9s value=%.6g range=[%g, %g] expected=%s\n", c.spec.id.c_str(),
                    c.matches() ? "ok" : "MISMATCH", c.value, c.spec.lo, c.spec.hi, c.spec.expected ? "pass" : "fail");
    }
    std::printf("verdict: %s  (p = %zu, %.1fs, report in %s)\n", report.verdict.c_str(), report.p_used,
                report.elapsed_seconds, config.outputs.c_str());
    return report.ok() ? 0 : 1;
}

nlohmann::json read_model_argument(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return nlohmann::json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw ConfigError("model", "cannot open '" + arg + "'");
    return nlohmann::json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AR-sieve bootstrap simulation harness"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--out", out, "Override the output directory");

    auto* pre = app.add_subcommand("preset", "Run a built-in experiment");
    std::string preset_name;
    bool dump = false;
    pre->add_option("name", preset_name, "Preset name (see `list`)")->required();
    pre->add_option("--seed", seed, "Override the preset seed");
    pre->add_option("--out", out, "Output directory");
    pre->add_flag("--dump-config", dump, "Print the preset config as JSON and exit");

    auto* list = app.add_subcommand("list", "List built-in presets");

    auto* asym = app.add_subcommand("asymptotics", "Print analytic targets for a model and statistic");
    std::string model_arg;
    StatisticConfig stat;
    asym->add_option("--model", model_arg, "Model spec: JSON file or inline JSON")->required();
    asym->add_option("--statistic", stat.name, "mean|acvf|acf|ratio|spectral-density|product-lag-1|acvf-gm|acf-gm")
        ->required();
    asym->add_option("--lag", stat.lag, "Lag h");
    asym->add_option("--frequency", stat.frequency, "Frequency for spectral-density");
    asym->add_option("--bandwidth", stat.bandwidth, "Kernel bandwidth for spectral-density");

    CLI11_PARSE(app, argc, argv);
    set_worker_count(threads);

    try {
        if (*run) return execute(load_config(config_path), seed, out);
        if (*pre) {
            auto config = preset(preset_name);
            if (dump) {
                std::cout << to_json(config).dump(2) << '\n';
                return 0;
            }
            return execute(config, seed, out);
        }
        if (*list) {
            for (const auto& name : list_presets()) std::cout << name << '\n';
            return 0;
        }
        if (*asym) {
            const auto model = model_spec_from_json(read_model_argument(model_arg), "model");
            nlohmann::ordered_json j;
            j["model"] = to_json(model);
            j["targets"] = nlohmann::ordered_json::array();
            for (const auto& t : analytic_targets(model, stat)) {
                j["targets"].push_back({{"id", t.id}, {"value", t.value}, {"formula", t.formula}, {"methods", t.methods}});
            }
            std::cout << j.dump(2) << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
