#pragma once

// JSON mappings (nlohmann ADL hooks) for every persisted or wire-visible
// type. Physical quantities always use SI-unit-suffixed field names.
// from_json on config-like types starts from the default-constructed value,
// so absent keys keep their defaults.

#include <nlohmann/json.hpp>

#include "ecoprompt/budget.hpp"
#include "ecoprompt/farm/config.hpp"
#include "ecoprompt/farm/state.hpp"
#include "ecoprompt/footprint.hpp"
#include "ecoprompt/provider.hpp"

namespace ecoprompt {

void to_json(nlohmann::json& j, const ModelProfile& v);
void from_json(const nlohmann::json& j, ModelProfile& v);
void to_json(nlohmann::json& j, const DatacenterProfile& v);
void from_json(const nlohmann::json& j, DatacenterProfile& v);
void to_json(nlohmann::json& j, const RelatableConstants& v);
void from_json(const nlohmann::json& j, RelatableConstants& v);
void to_json(nlohmann::json& j, const QueryUsage& v);
void from_json(const nlohmann::json& j, QueryUsage& v);
void to_json(nlohmann::json& j, const FootprintEstimate& v);
void from_json(const nlohmann::json& j, FootprintEstimate& v);
void to_json(nlohmann::json& j, const RelatableUnits& v);
void to_json(nlohmann::json& j, const ResourceLimits& v);
void from_json(const nlohmann::json& j, ResourceLimits& v);
void to_json(nlohmann::json& j, const StatusThresholds& v);
void from_json(const nlohmann::json& j, StatusThresholds& v);
void to_json(nlohmann::json& j, const ResourceStatus& v);
void to_json(nlohmann::json& j, const StatusTransition& v);
void to_json(nlohmann::json& j, const ProviderResult& v);
void to_json(nlohmann::json& j, const LiveProviderConfig& v);
void from_json(const nlohmann::json& j, LiveProviderConfig& v);

/// {"water": {...}, "carbon": {...}, "energy": {...}}
nlohmann::json statuses_to_json(const LimitStatus& statuses);

/// Parses {"water_ml"?, "carbon_g"?, "energy_wh"?}; null or absent removes a
/// limit. Throws Error(malformed) for non-numeric values.
ResourceLimits limits_from_request(const nlohmann::json& j);

}  // namespace ecoprompt

namespace ecoprompt::farm {

void to_json(nlohmann::json& j, const CropSpec& v);
void from_json(const nlohmann::json& j, CropSpec& v);
void to_json(nlohmann::json& j, const GameConfig& v);
void from_json(const nlohmann::json& j, GameConfig& v);

void to_json(nlohmann::json& j, const TilePos& v);
void from_json(const nlohmann::json& j, TilePos& v);
void to_json(nlohmann::json& j, const GameState& v);
void from_json(const nlohmann::json& j, GameState& v);
void to_json(nlohmann::json& j, const Event& v);
void to_json(nlohmann::json& j, const Score& v);

}  // namespace ecoprompt::farm
