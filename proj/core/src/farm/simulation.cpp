#include "ecoprompt/farm/simulation.hpp"

#include <algorithm>
#include <charconv>

#include "ecoprompt/error.hpp"
#include "ecoprompt/provider.hpp"

namespace ecoprompt::farm {
namespace {

constexpr long long kMarketCadenceTicks = 5;

/// The headless player. Each tick it harvests, deals with pests and birds,
/// (maybe) consults the farm hand, plants, waters, trades, then ticks.
class Player {
 public:
  Player(Game& game, const PolicySpec& policy, const Provider& provider)
      : game_(game), policy_(policy), provider_(provider) {}

  void act() {
    harvest_all();
    if (over()) return;
    handle_pests();
    if (over()) return;
    handle_birds();
    if (over()) return;
    plant_and_water();
    if (over()) return;
    trade();
  }

 private:
  const GameState& s() const { return game_.state(); }
  const GameConfig& c() const { return game_.config(); }
  bool over() const { return s().game_over(); }
  bool ai() const { return policy_.uses_ai(s().lake_health); }

  void harvest_all() {
    for (std::size_t i = 0; i < s().tiles.size() && !over(); ++i) {
      const Tile& t = s().tiles[i];
      if (t.crop && t.crop->stage == GrowthStage::mature) game_.harvest(s().pos_of(i));
    }
  }

  bool can_craft() const {
    return std::all_of(c().pests.pesticide_recipe.begin(), c().pests.pesticide_recipe.end(),
                       [&](const auto& kv) { return s().count(kv.first) >= kv.second; });
  }

  void handle_pests() {
    if (s().level < c().features.pests) return;
    std::vector<long long> ids;
    for (const auto& p : s().pests) ids.push_back(p.id);
    for (long long id : ids) {
      if (over()) return;
      const Pest* pest = s().find_pest(id);
      if (pest == nullptr) continue;
      if (ai()) {
        game_.ai_pest_control(id, true);
      } else if (can_craft()) {
        game_.craft_pesticide();
      } else if (!pest->minigame_started_tick) {
        game_.start_minigame(id);
      } else {
        const long long elapsed = s().tick - *pest->minigame_started_tick + 1;
        const long long reachable = elapsed * c().pests.max_hit_rate;
        if (reachable >= game_.required_hits()) game_.resolve_minigame(id, game_.required_hits());
      }
    }
  }

  void handle_birds() {
    if (s().level < c().features.scarecrow || s().scarecrow.active) return;
    if (ai()) {
      game_.ai_scarecrow(true);
    } else {
      game_.place_manual_scarecrow("drawing:headless-player");
    }
  }

  const CropSpec* pick_crop() const {
    const bool seasonal = s().level >= c().features.seasons;
    const std::string season = c().season_at(s().tick);
    const CropSpec* best = nullptr;
    for (const auto& spec : c().crops) {
      if (s().count(seed_item(spec.name)) < 1) continue;
      if (seasonal && !spec.grows_in(season)) continue;
      // Highest XP per watered tick first.
      if (best == nullptr ||
          spec.xp_on_harvest * best->growth_ticks > best->xp_on_harvest * spec.growth_ticks) {
        best = &spec;
      }
    }
    return best;
  }

  void plant_and_water() {
    bool consulted = false;
    for (std::size_t i = 0; i < s().tiles.size() && !over(); ++i) {
      if (s().tiles[i].content != TileContent::empty) continue;
      const CropSpec* spec = pick_crop();
      if (spec == nullptr) break;
      if (!consulted && s().level >= c().features.farmhand) {
        consulted = true;
        const std::string season = c().season_at(s().tick);
        if (ai()) {
          game_.ask_farmhand("What should I plant in " + season + "?", provider_, true);
          if (over()) return;
        } else {
          (void)game_.read_almanac(season);
        }
      }
      game_.plant(s().pos_of(i), spec->name);
    }
    for (std::size_t i = 0; i < s().tiles.size() && !over(); ++i) {
      const Tile& t = s().tiles[i];
      if (t.crop && t.crop->stage != GrowthStage::mature && t.watered_until <= s().tick) {
        game_.water(s().pos_of(i));
      }
    }
  }

  void trade() {
    if (s().level < c().features.market || s().market.open) return;
    if (s().tick - last_trade_tick_ < kMarketCadenceTicks) return;
    std::vector<std::string> stocked;
    for (const auto& spec : c().crops) {
      if (s().count(spec.name) > 0) stocked.push_back(spec.name);
    }
    if (stocked.empty()) return;
    game_.open_week();
    for (const auto& crop : stocked) {
      if (over()) return;
      if (ai()) {
        game_.ai_price_suggestion(crop, true);
      } else {
        const CropSpec* spec = c().find_crop(crop);
        // Keep last week's price if it sold anything, else go back to the reference.
        long long price = spec->base_price;
        auto it = s().market.last_week_report.find(crop);
        if (it != s().market.last_week_report.end() && it->second.units_sold > 0) {
          price = it->second.price;
        }
        game_.set_price(crop, price);
      }
    }
    if (over()) return;
    game_.sell();
    last_trade_tick_ = s().tick;
  }

  Game& game_;
  const PolicySpec& policy_;
  const Provider& provider_;
  long long last_trade_tick_ = -kMarketCadenceTicks;
};

}  // namespace

bool PolicySpec::uses_ai(int lake_health) const noexcept {
  switch (kind) {
    case Kind::never_ai: return false;
    case Kind::always_ai: return true;
    case Kind::threshold: return lake_health > threshold;
  }
  return false;
}

std::string PolicySpec::name() const {
  switch (kind) {
    case Kind::never_ai: return "never_ai";
    case Kind::always_ai: return "always_ai";
    case Kind::threshold: return "threshold:" + std::to_string(threshold);
  }
  return "?";
}

PolicySpec PolicySpec::parse(std::string_view text) {
  if (text == "never_ai") return {Kind::never_ai, 0};
  if (text == "always_ai") return {Kind::always_ai, 0};
  std::string_view rest;
  if (text.starts_with("threshold:")) {
    rest = text.substr(10);
  } else if (text.starts_with("threshold(") && text.ends_with(")")) {
    rest = text.substr(10, text.size() - 11);
  } else {
    throw Error(ErrorCode::validation, "unknown policy '" + std::string(text) +
                                           "' (expected never_ai, always_ai or threshold:K)");
  }
  int k = -1;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
  if (ec != std::errc{} || ptr != rest.data() + rest.size() || k < 0 || k > 100) {
    throw Error(ErrorCode::validation, "policy threshold must be an integer in [0, 100]");
  }
  return {Kind::threshold, k};
}

SimulationReport run_simulation(std::uint64_t seed, const PolicySpec& policy, long long max_ticks,
                                const GameConfig& config, const Provider& provider) {
  SimulationReport report{{}, {}, 0, {}, Game(seed, config)};
  Game& game = report.game;
  Player player(game, policy, provider);
  int level = game.state().level;

  auto note_level = [&] {
    while (level < game.state().level) {
      ++level;
      report.lake_at_level_up.push_back(game.state().lake_health);
    }
  };

  while (!game.state().game_over() && game.state().tick < max_ticks) {
    player.act();
    note_level();
    if (game.state().game_over()) break;
    game.tick();
    note_level();
    const GameState& s = game.state();
    long long ai_total = 0;
    for (const auto& [kind, n] : s.ai_actions) ai_total += n;
    report.rows.push_back(TrajectoryRow{s.tick, s.level, s.lake_health, s.coins, s.xp, ai_total});
  }
  {
    // The game can also end mid-turn (an AI action emptying the lake).
    const GameState& s = game.state();
    long long ai_total = 0;
    for (const auto& [kind, n] : s.ai_actions) ai_total += n;
    const TrajectoryRow last{s.tick, s.level, s.lake_health, s.coins, s.xp, ai_total};
    if (report.rows.empty() || report.rows.back() != last) report.rows.push_back(last);
  }
  report.ticks = game.state().tick;
  report.score = game.score();
  return report;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  out << "tick,level,lake_health,coins,xp,ai_actions\n";
  for (const auto& r : rows) {
    out << r.tick << ',' << r.level << ',' << r.lake_health << ',' << r.coins << ',' << r.xp << ','
        << r.ai_actions << '\n';
  }
}

}  // namespace ecoprompt::farm
