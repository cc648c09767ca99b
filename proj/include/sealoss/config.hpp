#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sealoss/ingest.hpp"

namespace sealoss {

/// Environment variable consulted when no --config is given.
inline constexpr const char* kConfigEnvVar = "SEALOSS_CONFIG";

std::string_view to_string(Polarization p);
Polarization parse_polarization(std::string_view name);
std::string_view to_string(RoughnessModel m);
RoughnessModel parse_roughness_model(std::string_view name);

/// Missing keys take the library defaults; unknown keys are rejected.
/// Throws ConfigError.
CampaignConfig parse_config(const nlohmann::json& doc);
CampaignConfig load_config(const std::filesystem::path& path);

/// Every field, defaults included.
nlohmann::json to_json(const CampaignConfig& cfg);
nlohmann::json to_json(const LogDistanceParams& p);

}  // namespace sealoss
