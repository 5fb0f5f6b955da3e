#include "ecoprompt/farm/actions.hpp"

#include <cstdint>

#include "ecoprompt/error.hpp"

namespace ecoprompt::farm {
namespace {

using nlohmann::json;

template <class>
inline constexpr bool kAlwaysFalse = false;

const json& require(const json& payload, const char* key) {
  if (!payload.is_object() || !payload.contains(key)) {
    throw Error(ErrorCode::malformed, std::string("payload is missing '") + key + "'");
  }
  return payload.at(key);
}

long long require_int(const json& payload, const char* key) {
  const json& v = require(payload, key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::malformed, std::string("'") + key + "' must be an integer");
  }
  return v.get<long long>();
}

std::string require_string(const json& payload, const char* key) {
  const json& v = require(payload, key);
  if (!v.is_string()) {
    throw Error(ErrorCode::malformed, std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

TilePos require_tile(const json& payload) {
  const long long x = require_int(payload, "x");
  const long long y = require_int(payload, "y");
  if (x < INT32_MIN || x > INT32_MAX || y < INT32_MIN || y > INT32_MAX) {
    throw Error(ErrorCode::malformed, "tile coordinates out of range");
  }
  return TilePos{static_cast<int>(x), static_cast<int>(y)};
}

json tile_json(TilePos p) { return json{{"x", p.x}, {"y", p.y}}; }

}  // namespace

std::string_view type_name(const Action& action) noexcept {
  return std::visit(
      [](const auto& a) -> std::string_view {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, action::Tick>) return "tick";
        else if constexpr (std::is_same_v<T, action::Plant>) return "plant";
        else if constexpr (std::is_same_v<T, action::Water>) return "water";
        else if constexpr (std::is_same_v<T, action::Harvest>) return "harvest";
        else if constexpr (std::is_same_v<T, action::AskFarmhand>) return "ask_farmhand";
        else if constexpr (std::is_same_v<T, action::ReadAlmanac>) return "read_almanac";
        else if constexpr (std::is_same_v<T, action::StartMinigame>) return "start_minigame";
        else if constexpr (std::is_same_v<T, action::ResolveMinigame>) return "resolve_minigame";
        else if constexpr (std::is_same_v<T, action::CraftPesticide>) return "craft_pesticide";
        else if constexpr (std::is_same_v<T, action::AiPestControl>) return "ai_pest_control";
        else if constexpr (std::is_same_v<T, action::PlaceManualScarecrow>) return "place_manual_scarecrow";
        else if constexpr (std::is_same_v<T, action::AiScarecrow>) return "ai_scarecrow";
        else if constexpr (std::is_same_v<T, action::OpenWeek>) return "open_week";
        else if constexpr (std::is_same_v<T, action::SetPrice>) return "set_price";
        else if constexpr (std::is_same_v<T, action::Sell>) return "sell";
        else if constexpr (std::is_same_v<T, action::AiPriceSuggestion>) return "ai_price_suggestion";
        else static_assert(kAlwaysFalse<T>);
      },
      action);
}

bool is_ai_action_type(std::string_view type) noexcept {
  return type == "ask_farmhand" || type == "ai_pest_control" || type == "ai_scarecrow" ||
         type == "ai_price_suggestion";
}

bool is_ai_action(const Action& action) noexcept { return is_ai_action_type(type_name(action)); }

Action action_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw Error(ErrorCode::malformed, "action must be an object with a string 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  const json payload = j.value("payload", json::object());
  if (!payload.is_object()) throw Error(ErrorCode::malformed, "'payload' must be an object");
  bool ack = false;
  if (j.contains("ack_warning")) {
    if (!j["ack_warning"].is_boolean()) {
      throw Error(ErrorCode::malformed, "'ack_warning' must be a boolean");
    }
    ack = j["ack_warning"].get<bool>();
  }

  if (type == "tick") return action::Tick{};
  if (type == "plant") return action::Plant{require_tile(payload), require_string(payload, "crop")};
  if (type == "water") return action::Water{require_tile(payload)};
  if (type == "harvest") return action::Harvest{require_tile(payload)};
  if (type == "ask_farmhand") {
    action::AskFarmhand a{require_string(payload, "question"), ack, std::nullopt, false};
    if (payload.contains("answer")) {
      a.answer = require_string(payload, "answer");
      a.refused = payload.value("refused", false);
    }
    return a;
  }
  if (type == "read_almanac") return action::ReadAlmanac{payload.value("topic", std::string{})};
  if (type == "start_minigame") return action::StartMinigame{require_int(payload, "pest_id")};
  if (type == "resolve_minigame") {
    return action::ResolveMinigame{require_int(payload, "pest_id"), require_int(payload, "hits")};
  }
  if (type == "craft_pesticide") return action::CraftPesticide{};
  if (type == "ai_pest_control") return action::AiPestControl{require_int(payload, "pest_id"), ack};
  if (type == "place_manual_scarecrow") {
    return action::PlaceManualScarecrow{require_string(payload, "drawing_ref")};
  }
  if (type == "ai_scarecrow") return action::AiScarecrow{ack};
  if (type == "open_week") return action::OpenWeek{};
  if (type == "set_price") {
    return action::SetPrice{require_string(payload, "crop"), require_int(payload, "price")};
  }
  if (type == "sell") return action::Sell{};
  if (type == "ai_price_suggestion") {
    return action::AiPriceSuggestion{require_string(payload, "crop"), ack};
  }
  throw Error(ErrorCode::malformed, "unknown action type '" + type + "'");
}

json action_to_json(const Action& action) {
  json out{{"type", type_name(action)}, {"payload", json::object()}};
  json& p = out["payload"];
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, action::Plant>) {
          p = tile_json(a.tile);
          p["crop"] = a.crop;
        } else if constexpr (std::is_same_v<T, action::Water> ||
                             std::is_same_v<T, action::Harvest>) {
          p = tile_json(a.tile);
        } else if constexpr (std::is_same_v<T, action::AskFarmhand>) {
          p["question"] = a.question;
          if (a.answer) {
            p["answer"] = *a.answer;
            p["refused"] = a.refused;
          }
          out["ack_warning"] = a.ack_warning;
        } else if constexpr (std::is_same_v<T, action::ReadAlmanac>) {
          p["topic"] = a.topic;
        } else if constexpr (std::is_same_v<T, action::StartMinigame>) {
          p["pest_id"] = a.pest_id;
        } else if constexpr (std::is_same_v<T, action::ResolveMinigame>) {
          p["pest_id"] = a.pest_id;
          p["hits"] = a.hits;
        } else if constexpr (std::is_same_v<T, action::AiPestControl>) {
          p["pest_id"] = a.pest_id;
          out["ack_warning"] = a.ack_warning;
        } else if constexpr (std::is_same_v<T, action::PlaceManualScarecrow>) {
          p["drawing_ref"] = a.drawing_ref;
        } else if constexpr (std::is_same_v<T, action::AiScarecrow>) {
          out["ack_warning"] = a.ack_warning;
        } else if constexpr (std::is_same_v<T, action::SetPrice>) {
          p["crop"] = a.crop;
          p["price"] = a.price;
        } else if constexpr (std::is_same_v<T, action::AiPriceSuggestion>) {
          p["crop"] = a.crop;
          out["ack_warning"] = a.ack_warning;
        }
      },
      action);
  return out;
}

}  // namespace ecoprompt::farm
