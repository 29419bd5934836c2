#include "sieveboot/model_json.hpp"

#include <algorithm>

#include "sieveboot/ar_algebra.hpp"
#include "sieveboot/errors.hpp"

namespace sieveboot {

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                         const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(path + "." + key, "unknown key");
        }
    }
}

nlohmann::json to_json(const ModelSpec& model) {
    return {{"family", std::string(to_string(model.family))},
            {"coefficients", model.coefficients},
            {"innovation", {{"family", std::string(to_string(model.innovation.family))},
                            {"scale", model.innovation.scale}}},
            {"burnin", model.burnin}};
}

ModelSpec model_spec_from_json(const nlohmann::json& j, const std::string& path) {
    reject_unknown_keys(j, {"family", "coefficients", "innovation", "burnin"}, path);
    ModelSpec m;
    if (!j.contains("family") || !j["family"].is_string()) throw ConfigError(path + ".family", "required string");
    const auto family = j["family"].get<std::string>();
    if (family == "linear") {
        m.family = ModelFamily::linear;
    } else if (family == "ar") {
        m.family = ModelFamily::ar;
    } else if (family == "arch1") {
        m.family = ModelFamily::arch1;
    } else {
        throw ConfigError(path + ".family", "expected one of linear, ar, arch1; got '" + family + "'");
    }

    if (j.contains("coefficients")) {
        const auto& c = j["coefficients"];
        if (!c.is_array()) throw ConfigError(path + ".coefficients", "expected an array of numbers");
        for (const auto& v : c) {
            if (!v.is_number()) throw ConfigError(path + ".coefficients", "expected an array of numbers");
            m.coefficients.push_back(v.get<double>());
        }
    }

    if (j.contains("innovation")) {
        const auto& inn = j["innovation"];
        reject_unknown_keys(inn, {"family", "scale"}, path + ".innovation");
        if (inn.contains("family")) {
            if (!inn["family"].is_string()) throw ConfigError(path + ".innovation.family", "expected a string");
            try {
                m.innovation.family = innovation_family_from_string(inn["family"].get<std::string>());
            } catch (const DomainError& e) {
                throw ConfigError(path + ".innovation.family", e.what());
            }
        }
        if (inn.contains("scale")) {
            if (!inn["scale"].is_number()) throw ConfigError(path + ".innovation.scale", "expected a number");
            m.innovation.scale = inn["scale"].get<double>();
        }
    }
    if (!(m.innovation.scale > 0.0)) throw ConfigError(path + ".innovation.scale", "must be positive");

    const std::size_t order = m.family == ModelFamily::arch1 ? 1 : m.coefficients.size();
    m.burnin = default_burnin(order);
    if (j.contains("burnin")) {
        if (!j["burnin"].is_number_unsigned()) throw ConfigError(path + ".burnin", "expected a non-negative integer");
        m.burnin = j["burnin"].get<std::size_t>();
    }

    switch (m.family) {
        case ModelFamily::arch1: {
            if (m.coefficients.size() != 2) throw ConfigError(path + ".coefficients", "arch1 expects [omega, alpha1]");
            const double omega = m.coefficients[0];
            const double alpha = m.coefficients[1];
            if (!(omega > 0.0)) throw ConfigError(path + ".coefficients", "omega must be positive");
            if (!(alpha >= 0.0 && 3.0 * alpha * alpha < 1.0)) {
                throw ConfigError(path + ".coefficients", "alpha1 must satisfy 0 <= alpha1 and 3 alpha1^2 < 1");
            }
            if (m.innovation.family != InnovationFamily::gaussian || m.innovation.scale != 1.0) {
                throw ConfigError(path + ".innovation", "arch1 is driven by standard Gaussian noise");
            }
            break;
        }
        case ModelFamily::ar:
            if (!m.coefficients.empty() && !(min_modulus_on_disk(m.coefficients, 1.0) > 0.0)) {
                throw ConfigError(path + ".coefficients", "AR polynomial has a root in the closed unit disk");
            }
            break;
        case ModelFamily::linear:
            break;
    }
    return m;
}

}  // namespace sieveboot
