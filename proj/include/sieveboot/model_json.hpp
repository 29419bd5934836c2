#pragma once

#include "json.hpp"
#include "sieveboot/dgp.hpp"

namespace sieveboot {

/// {"family", "coefficients", "innovation": {"family", "scale"}, "burnin"}.
[[nodiscard]] nlohmann::json to_json(const ModelSpec& model);

/// Missing optional fields take their defaults (innovation gaussian/1, burnin
/// max(1000, 50 * order)). Unknown keys and malformed values throw ConfigError
/// naming the field under `path`.
[[nodiscard]] ModelSpec model_spec_from_json(const nlohmann::json& j, const std::string& path = "dgp");

/// Throws ConfigError unless every key of `j` is in `allowed`.
void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                         const std::string& path);

}  // namespace sieveboot
