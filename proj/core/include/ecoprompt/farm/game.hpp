#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecoprompt/farm/actions.hpp"
#include "ecoprompt/farm/config.hpp"
#include "ecoprompt/farm/state.hpp"

namespace ecoprompt {
class Provider;
}

namespace ecoprompt::farm {

/// Server-authoritative farm game.
///
/// Every mutation goes through apply(): the action runs against a copy of
/// the state and is committed (and appended to the action log) only if it
/// succeeds, so a rejected action leaves the game untouched. Given the same
/// config, seed and action log the resulting state is bit-identical.
class Game {
 public:
  Game(std::uint64_t seed, GameConfig config);

  const GameState& state() const noexcept { return state_; }
  const GameConfig& config() const noexcept { return config_; }
  /// Actions committed since the base state (the initial state unless the
  /// game was restored from a compacted snapshot).
  const std::vector<Action>& actions() const noexcept { return actions_; }
  const GameState& base_state() const noexcept { return base_; }

  /// Applies one action. AskFarmhand without a recorded answer consults
  /// `provider`; any provider failure propagates and nothing is committed.
  /// ReadAlmanac is a pure read and is not recorded.
  Events apply(const Action& action, const Provider* provider = nullptr);

  // Convenience wrappers around apply().
  Events tick() { return apply(action::Tick{}); }
  Events plant(TilePos tile, std::string crop) { return apply(action::Plant{tile, std::move(crop)}); }
  Events water(TilePos tile) { return apply(action::Water{tile}); }
  Events harvest(TilePos tile) { return apply(action::Harvest{tile}); }
  Events ask_farmhand(std::string question, const Provider& provider, bool ack_warning) {
    return apply(action::AskFarmhand{std::move(question), ack_warning, std::nullopt, false},
                 &provider);
  }
  std::string read_almanac(std::string_view topic) const;
  Events start_minigame(long long pest_id) { return apply(action::StartMinigame{pest_id}); }
  Events resolve_minigame(long long pest_id, long long hits) {
    return apply(action::ResolveMinigame{pest_id, hits});
  }
  Events craft_pesticide() { return apply(action::CraftPesticide{}); }
  Events ai_pest_control(long long pest_id, bool ack) {
    return apply(action::AiPestControl{pest_id, ack});
  }
  Events place_manual_scarecrow(std::string drawing_ref) {
    return apply(action::PlaceManualScarecrow{std::move(drawing_ref)});
  }
  Events ai_scarecrow(bool ack) { return apply(action::AiScarecrow{ack}); }
  Events open_week() { return apply(action::OpenWeek{}); }
  Events set_price(std::string crop, long long price) {
    return apply(action::SetPrice{std::move(crop), price});
  }
  Events sell() { return apply(action::Sell{}); }
  /// Returns the suggested price (also applied as the player's price).
  long long ai_price_suggestion(std::string crop, bool ack);

  /// Hits needed to clear a pest at the current level.
  long long required_hits() const noexcept;
  Score score() const;

  /// Replay-based save: {"seed", "config", "base_state"?, "actions"}.
  nlohmann::json save() const;
  static Game load(const nlohmann::json& saved);

  /// Starts a game from a full state snapshot (log compaction).
  static Game from_snapshot(GameConfig config, GameState snapshot);

 private:
  Game() = default;

  GameConfig config_;
  GameState base_;
  GameState state_;
  std::vector<Action> actions_;
};

/// Fresh level-1 state: lake at 100, empty grid apart from seeded obstacles,
/// and the community-lake tutorial in the status log.
GameState new_game(std::uint64_t seed, const GameConfig& config);

/// Community drain step: removes the next bag draw from the lake and logs it.
Events apply_community_drain(GameState& state, const GameConfig& config);

}  // namespace ecoprompt::farm
