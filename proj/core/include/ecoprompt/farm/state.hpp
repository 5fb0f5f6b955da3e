#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecoprompt/rng.hpp"

namespace ecoprompt::farm {

struct TilePos {
  int x = 0;
  int y = 0;
  bool operator==(const TilePos&) const = default;
};

enum class TileContent { empty, planted, obstructed };
enum class GrowthStage { seedling, growing, mature };
enum class Outcome { in_progress, won, lost };

std::string_view to_string(TileContent c) noexcept;
std::string_view to_string(GrowthStage s) noexcept;
std::string_view to_string(Outcome o) noexcept;

struct CropInstance {
  std::string crop;
  long long planted_at = 0;
  int watered_ticks = 0;
  GrowthStage stage = GrowthStage::seedling;
  bool pest_damaged = false;

  bool operator==(const CropInstance&) const = default;
};

struct Tile {
  TileContent content = TileContent::empty;
  std::optional<CropInstance> crop;  // set iff content == planted
  long long watered_until = 0;       // tile counts as watered while tick < watered_until

  bool operator==(const Tile&) const = default;
};

struct Pest {
  long long id = 0;
  TilePos pos;
  long long spawned_tick = 0;
  std::optional<long long> minigame_started_tick;

  bool operator==(const Pest&) const = default;
};

struct Scarecrow {
  bool active = false;
  bool ai_generated = false;
  std::string image_ref;

  bool operator==(const Scarecrow&) const = default;
};

struct SaleRecord {
  long long units_sold = 0;
  long long price = 0;
  bool operator==(const SaleRecord&) const = default;
};

struct MarketWeek {
  bool open = false;
  long long week_index = 0;
  std::map<std::string, long long> demand;  // this week's demand at reference price
  std::map<std::string, SaleRecord> last_week_report;
  std::map<std::string, long long> player_prices;
  long long weeks_sold = 0;

  bool operator==(const MarketWeek&) const = default;
};

/// Full farm-game world. Value type; equality is exact field-by-field.
struct GameState {
  std::uint64_t seed = 0;
  long long tick = 0;
  int level = 1;
  int width = 0;
  int height = 0;
  std::vector<Tile> tiles;  // row-major, width * height
  std::map<std::string, long long> inventory;
  long long coins = 0;
  long long xp = 0;
  int lake_health = 100;
  std::vector<std::string> status_log;
  std::vector<Pest> pests;
  long long next_pest_id = 1;
  int pending_bird_strikes = 0;
  Scarecrow scarecrow;
  MarketWeek market;
  std::map<std::string, long long> ai_actions;  // AiActionKind name -> count
  long long ai_lake_cost = 0;                   // lake points removed by player AI use
  long long drain_total = 0;                    // lake points removed by community drain
  std::vector<int> drain_bag;
  Pcg32 drain_rng;
  Pcg32 event_rng;
  Pcg32 market_rng;
  Outcome outcome = Outcome::in_progress;

  bool in_bounds(TilePos p) const noexcept {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }
  Tile& at(TilePos p) { return tiles[static_cast<std::size_t>(p.y * width + p.x)]; }
  const Tile& at(TilePos p) const { return tiles[static_cast<std::size_t>(p.y * width + p.x)]; }
  TilePos pos_of(std::size_t index) const noexcept {
    return TilePos{static_cast<int>(index % static_cast<std::size_t>(width)),
                   static_cast<int>(index / static_cast<std::size_t>(width))};
  }
  long long count(std::string_view item) const;
  const Pest* find_pest(long long id) const noexcept;
  bool pest_on(TilePos p) const noexcept;
  bool game_over() const noexcept { return outcome != Outcome::in_progress; }

  bool operator==(const GameState&) const = default;
};

/// Something that happened while applying an action; logged events are also
/// appended to GameState::status_log.
struct Event {
  std::string kind;
  std::string message;
  std::optional<TilePos> tile;
  long long value = 0;

  bool operator==(const Event&) const = default;
};

using Events = std::vector<Event>;

struct Score {
  long long coins = 0;
  long long xp = 0;
  int lake_health = 100;
  int levels_completed = 0;
  std::map<std::string, long long> ai_actions;
  Outcome outcome = Outcome::in_progress;

  bool operator==(const Score&) const = default;
};

}  // namespace ecoprompt::farm
