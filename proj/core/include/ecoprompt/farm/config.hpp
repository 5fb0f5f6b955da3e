#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecoprompt::farm {

struct CropSpec {
  std::string name;
  std::vector<std::string> seasons;  // valid planting seasons
  int growth_ticks = 5;              // watered ticks needed to mature
  long long yield_units = 2;
  long long xp_on_harvest = 2;
  long long base_price = 3;   // market reference price (coins)
  long long base_demand = 10; // units demanded per week at the reference price
  long long seed_return = 1;  // seeds recovered per harvest

  bool grows_in(std::string_view season) const;
  bool operator==(const CropSpec&) const = default;
};

enum class AiActionKind { farmhand_chat, pest_control, scarecrow_image, price_suggestion };
inline constexpr AiActionKind kAiActionKinds[] = {
    AiActionKind::farmhand_chat, AiActionKind::pest_control, AiActionKind::scarecrow_image,
    AiActionKind::price_suggestion};

std::string_view to_string(AiActionKind kind) noexcept;

/// Lake-health points removed by each AI affordance. Non-AI alternatives cost 0.
struct AiCostTable {
  int farmhand_chat = 2;
  int pest_control = 5;
  int scarecrow_image = 8;
  int price_suggestion = 3;

  int cost(AiActionKind kind) const noexcept;
  bool operator==(const AiCostTable&) const = default;
};

/// Simulated other farmers. Every `interval_ticks` the lake loses one value
/// drawn from a shuffled bag of `draws`; the bag is refilled when empty.
struct DrainConfig {
  int interval_ticks = 8;
  std::vector<int> draws{1, 2, 3};

  bool operator==(const DrainConfig&) const = default;
};

struct FeatureLevels {
  int seasons = 2;
  int farmhand = 2;
  int almanac = 2;
  int pests = 3;
  int scarecrow = 4;
  int market = 5;

  bool operator==(const FeatureLevels&) const = default;
};

struct PestConfig {
  double spawn_chance = 0.08;  // per tick
  int required_hits_base = 12;
  int required_hits_per_level = 4;  // added per level above the pest level
  int max_hit_rate = 6;             // accepted hits per tick of minigame
  double yield_penalty = 0.5;
  std::map<std::string, long long> pesticide_recipe{{"wheat", 2}};

  bool operator==(const PestConfig&) const = default;
};

struct BirdConfig {
  double spawn_chance = 0.06;
  double yield_penalty = 0.5;

  bool operator==(const BirdConfig&) const = default;
};

struct MarketConfig {
  double elasticity = 1.0;
  double demand_jitter = 0.25;  // weekly demand factor drawn in [1 - j, 1 + j]
  long long max_price = 100;    // prices are whole coins in [1, max_price]

  bool operator==(const MarketConfig&) const = default;
};

struct GameConfig {
  int width = 6;
  int height = 4;
  int obstacles = 2;
  int water_duration_ticks = 3;
  int season_length_ticks = 40;
  std::vector<std::string> seasons{"spring", "summer", "autumn", "winter"};
  std::vector<CropSpec> crops = default_crops();
  std::map<std::string, long long> initial_inventory{{"seed:wheat", 2}};
  // XP needed to reach levels 2, 3, 4 and 5.
  std::vector<long long> level_xp_thresholds{20, 80, 160, 260};
  std::map<int, std::map<std::string, long long>> level_grants = default_grants();
  long long completion_xp = 380;
  long long completion_market_weeks = 2;
  FeatureLevels features;
  AiCostTable ai_costs;
  DrainConfig drain;
  PestConfig pests;
  BirdConfig birds;
  MarketConfig market;
  std::string ai_scarecrow_image = "assets/ai_scarecrow_placeholder.svg";
  std::string farmhand_persona =
      "You are a friendly farm hand helping a child run a small farm. Answer briefly.";

  const CropSpec* find_crop(std::string_view name) const noexcept;
  std::string season_at(long long tick) const;

  static std::vector<CropSpec> default_crops();
  static std::map<int, std::map<std::string, long long>> default_grants();

  bool operator==(const GameConfig&) const = default;
};

/// Throws Error(config) on the first violated constraint.
void validate(const GameConfig& config);

inline std::string seed_item(std::string_view crop) { return "seed:" + std::string(crop); }

}  // namespace ecoprompt::farm
