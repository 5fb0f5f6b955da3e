#include <algorithm>
#include <set>

#include "ecoprompt/error.hpp"
#include "ecoprompt/farm/config.hpp"
#include "ecoprompt/farm/state.hpp"

namespace ecoprompt::farm {

bool CropSpec::grows_in(std::string_view season) const {
  return std::find(seasons.begin(), seasons.end(), season) != seasons.end();
}

std::string_view to_string(AiActionKind kind) noexcept {
  switch (kind) {
    case AiActionKind::farmhand_chat: return "farmhand_chat";
    case AiActionKind::pest_control: return "pest_control";
    case AiActionKind::scarecrow_image: return "scarecrow_image";
    case AiActionKind::price_suggestion: return "price_suggestion";
  }
  return "?";
}

int AiCostTable::cost(AiActionKind kind) const noexcept {
  switch (kind) {
    case AiActionKind::farmhand_chat: return farmhand_chat;
    case AiActionKind::pest_control: return pest_control;
    case AiActionKind::scarecrow_image: return scarecrow_image;
    case AiActionKind::price_suggestion: return price_suggestion;
  }
  return 0;
}

std::vector<CropSpec> GameConfig::default_crops() {
  return {
      {"wheat", {"spring", "summer", "autumn"}, 6, 2, 2, 3, 12, 1},
      {"carrot", {"spring", "autumn", "winter"}, 5, 2, 2, 4, 10, 1},
      {"tomato", {"summer"}, 8, 4, 4, 6, 8, 1},
      {"pumpkin", {"autumn"}, 10, 3, 6, 10, 5, 1},
      {"kale", {"winter", "spring"}, 7, 3, 3, 5, 8, 1},
  };
}

std::map<int, std::map<std::string, long long>> GameConfig::default_grants() {
  return {
      {2, {{"seed:carrot", 3}, {"seed:wheat", 1}}},
      {3, {{"seed:tomato", 4}, {"seed:wheat", 2}}},
      {4, {{"seed:pumpkin", 3}, {"seed:kale", 3}}},
      {5, {{"seed:wheat", 2}, {"seed:carrot", 2}}},
  };
}

const CropSpec* GameConfig::find_crop(std::string_view name) const noexcept {
  for (const auto& c : crops) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string GameConfig::season_at(long long tick) const {
  const long long idx = (tick / season_length_ticks) % static_cast<long long>(seasons.size());
  return seasons[static_cast<std::size_t>(idx)];
}

void validate(const GameConfig& c) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::config, "game config: " + msg); };
  if (c.width <= 0 || c.height <= 0) fail("grid dimensions must be positive");
  if (c.obstacles < 0 || c.obstacles >= c.width * c.height) {
    fail("obstacle count must leave at least one free tile");
  }
  if (c.water_duration_ticks <= 0) fail("water_duration_ticks must be positive");
  if (c.season_length_ticks <= 0) fail("season_length_ticks must be positive");
  if (c.seasons.empty()) fail("at least one season is required");
  if (c.crops.empty()) fail("crop table is empty");
  std::set<std::string> names;
  for (const auto& crop : c.crops) {
    if (crop.name.empty() || !names.insert(crop.name).second) fail("crop names must be unique");
    if (crop.growth_ticks <= 0) fail(crop.name + ": growth_ticks must be positive");
    if (crop.yield_units < 0 || crop.xp_on_harvest < 0 || crop.seed_return < 0) {
      fail(crop.name + ": yields must be non-negative");
    }
    if (crop.base_price <= 0 || crop.base_demand < 0) fail(crop.name + ": bad market parameters");
    for (const auto& s : crop.seasons) {
      if (std::find(c.seasons.begin(), c.seasons.end(), s) == c.seasons.end()) {
        fail(crop.name + ": unknown season '" + s + "'");
      }
    }
  }
  if (c.level_xp_thresholds.size() != 4 ||
      !std::is_sorted(c.level_xp_thresholds.begin(), c.level_xp_thresholds.end())) {
    fail("level_xp_thresholds must list 4 non-decreasing values (levels 2-5)");
  }
  if (c.completion_xp < c.level_xp_thresholds.back()) {
    fail("completion_xp must be at least the level-5 threshold");
  }
  for (int cost : {c.ai_costs.farmhand_chat, c.ai_costs.pest_control, c.ai_costs.scarecrow_image,
                   c.ai_costs.price_suggestion}) {
    if (cost <= 0) fail("every AI action must have a positive lake cost");
  }
  if (c.drain.interval_ticks <= 0) fail("drain interval must be positive");
  if (c.drain.draws.empty()) fail("drain draws must not be empty");
  for (int d : c.drain.draws) {
    if (d < 0) fail("drain draws must be non-negative");
  }
  if (c.pests.spawn_chance < 0 || c.pests.spawn_chance > 1 || c.birds.spawn_chance < 0 ||
      c.birds.spawn_chance > 1) {
    fail("spawn chances must lie in [0, 1]");
  }
  if (c.pests.max_hit_rate <= 0 || c.pests.required_hits_base <= 0) {
    fail("minigame parameters must be positive");
  }
  if (c.pests.yield_penalty < 0 || c.pests.yield_penalty > 1 || c.birds.yield_penalty < 0 ||
      c.birds.yield_penalty > 1) {
    fail("yield penalties must lie in [0, 1]");
  }
  if (!(c.market.elasticity > 0)) fail("market elasticity must be positive");
  if (c.market.demand_jitter < 0 || c.market.demand_jitter >= 1) {
    fail("market demand_jitter must lie in [0, 1)");
  }
  if (c.market.max_price < 1) fail("market max_price must be >= 1");
}

std::string_view to_string(TileContent c) noexcept {
  switch (c) {
    case TileContent::empty: return "empty";
    case TileContent::planted: return "planted";
    case TileContent::obstructed: return "obstructed";
  }
  return "?";
}

std::string_view to_string(GrowthStage s) noexcept {
  switch (s) {
    case GrowthStage::seedling: return "seedling";
    case GrowthStage::growing: return "growing";
    case GrowthStage::mature: return "mature";
  }
  return "?";
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::in_progress: return "in_progress";
    case Outcome::won: return "won";
    case Outcome::lost: return "lost";
  }
  return "?";
}

long long GameState::count(std::string_view item) const {
  auto it = inventory.find(std::string(item));
  return it == inventory.end() ? 0 : it->second;
}

const Pest* GameState::find_pest(long long id) const noexcept {
  for (const auto& p : pests) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

bool GameState::pest_on(TilePos pos) const noexcept {
  return std::any_of(pests.begin(), pests.end(), [&](const Pest& p) { return p.pos == pos; });
}

}  // namespace ecoprompt::farm
