#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "ecoprompt/farm/state.hpp"

namespace ecoprompt::farm {

namespace action {

struct Tick {
  bool operator==(const Tick&) const = default;
};
struct Plant {
  TilePos tile;
  std::string crop;
  bool operator==(const Plant&) const = default;
};
struct Water {
  TilePos tile;
  bool operator==(const Water&) const = default;
};
struct Harvest {
  TilePos tile;
  bool operator==(const Harvest&) const = default;
};
/// `answer` is filled in once the provider has replied so that replay never
/// calls a provider again.
struct AskFarmhand {
  std::string question;
  bool ack_warning = false;
  std::optional<std::string> answer;
  bool refused = false;
  bool operator==(const AskFarmhand&) const = default;
};
struct ReadAlmanac {
  std::string topic;
  bool operator==(const ReadAlmanac&) const = default;
};
struct StartMinigame {
  long long pest_id = 0;
  bool operator==(const StartMinigame&) const = default;
};
struct ResolveMinigame {
  long long pest_id = 0;
  long long hits = 0;
  bool operator==(const ResolveMinigame&) const = default;
};
struct CraftPesticide {
  bool operator==(const CraftPesticide&) const = default;
};
struct AiPestControl {
  long long pest_id = 0;
  bool ack_warning = false;
  bool operator==(const AiPestControl&) const = default;
};
struct PlaceManualScarecrow {
  std::string drawing_ref;
  bool operator==(const PlaceManualScarecrow&) const = default;
};
struct AiScarecrow {
  bool ack_warning = false;
  bool operator==(const AiScarecrow&) const = default;
};
struct OpenWeek {
  bool operator==(const OpenWeek&) const = default;
};
struct SetPrice {
  std::string crop;
  long long price = 0;
  bool operator==(const SetPrice&) const = default;
};
struct Sell {
  bool operator==(const Sell&) const = default;
};
struct AiPriceSuggestion {
  std::string crop;
  bool ack_warning = false;
  bool operator==(const AiPriceSuggestion&) const = default;
};

}  // namespace action

using Action =
    std::variant<action::Tick, action::Plant, action::Water, action::Harvest, action::AskFarmhand,
                 action::ReadAlmanac, action::StartMinigame, action::ResolveMinigame,
                 action::CraftPesticide, action::AiPestControl, action::PlaceManualScarecrow,
                 action::AiScarecrow, action::OpenWeek, action::SetPrice, action::Sell,
                 action::AiPriceSuggestion>;

/// Wire name of the action ("tick", "plant", "ai_pest_control", ...).
std::string_view type_name(const Action& action) noexcept;

/// True for actions that consume lake health and therefore need ack_warning.
bool is_ai_action(const Action& action) noexcept;
bool is_ai_action_type(std::string_view type) noexcept;

/// Wire form: {"type": ..., "payload": {...}, "ack_warning": bool}.
/// Throws Error(malformed) for unknown types or missing/ill-typed fields.
Action action_from_json(const nlohmann::json& j);
nlohmann::json action_to_json(const Action& action);

}  // namespace ecoprompt::farm
