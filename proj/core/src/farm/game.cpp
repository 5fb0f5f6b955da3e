#include "ecoprompt/farm/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ecoprompt/error.hpp"
#include "ecoprompt/farm/market.hpp"
#include "ecoprompt/provider.hpp"
#include "ecoprompt/serialization.hpp"

namespace ecoprompt::farm {
namespace {

constexpr std::uint64_t kDrainStream = 1;
constexpr std::uint64_t kEventStream = 2;
constexpr std::uint64_t kMarketStream = 3;
constexpr std::uint64_t kLayoutStream = 4;

const char* level_intro(int level) {
  switch (level) {
    case 2:
      return "Level 2: seasons matter now. Check the Farmer's Almanac or ask the AI farm hand "
             "what to plant.";
    case 3:
      return "Level 3: pests are coming! Chase them away by hand, craft pesticide, or use AI "
             "pest control.";
    case 4:
      return "Level 4: birds will peck your harvest unless a scarecrow guards the farm.";
    case 5:
      return "Level 5: the market is open. Set your prices using last week's sales report.";
    default: return "";
  }
}

std::string tile_name(TilePos p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

long long hits_needed(const GameState& s, const GameConfig& c) noexcept;

/// Mutable view used while one action runs on a scratch copy of the state.
struct Step {
  GameState& s;
  const GameConfig& c;
  Events& events;

  void emit(std::string kind, std::string message, bool logged,
            std::optional<TilePos> tile = std::nullopt, long long value = 0) {
    if (logged) s.status_log.push_back(message);
    events.push_back(Event{std::move(kind), std::move(message), tile, value});
  }

  void require_active() const {
    if (s.game_over()) throw Error(ErrorCode::game_over, "the game is over");
  }

  void require_level(int level, const char* feature) const {
    if (s.level < level) {
      throw Error(ErrorCode::feature_locked,
                  std::string(feature) + " unlocks at level " + std::to_string(level));
    }
  }

  static void require_ack(bool ack) {
    if (!ack) {
      throw Error(ErrorCode::warning_required,
                  "AI actions must acknowledge the AI usage warning first");
    }
  }

  void require_in_bounds(TilePos p) const {
    if (!s.in_bounds(p)) throw Error(ErrorCode::out_of_bounds, "tile " + tile_name(p) + " is off the farm");
  }

  const CropSpec& crop(std::string_view name) const {
    const CropSpec* spec = c.find_crop(name);
    if (spec == nullptr) throw Error(ErrorCode::unknown_crop, "unknown crop '" + std::string(name) + "'");
    return *spec;
  }

  void add_item(const std::string& item, long long n) {
    if (n == 0) return;
    const long long v = (s.inventory[item] += n);
    if (v == 0) s.inventory.erase(item);
  }

  void lose() {
    if (s.outcome != Outcome::in_progress) return;
    s.outcome = Outcome::lost;
    emit("game_over", "The community lake has dried up. Game over.", true);
  }

  void spend_lake_on_ai(AiActionKind kind, const std::string& what) {
    const int cost = c.ai_costs.cost(kind);
    const int before = s.lake_health;
    s.lake_health = std::max(0, s.lake_health - cost);
    s.ai_lake_cost += before - s.lake_health;
    s.ai_actions[std::string(to_string(kind))] += 1;
    emit("ai_action",
         what + " used AI: lake -" + std::to_string(cost) + "% (now " +
             std::to_string(s.lake_health) + "%)",
         true, std::nullopt, cost);
    if (s.lake_health == 0) lose();
  }

  void check_progress() {
    if (s.game_over()) return;
    while (s.level < 5 &&
           s.xp >= c.level_xp_thresholds[static_cast<std::size_t>(s.level - 1)]) {
      ++s.level;
      if (auto it = c.level_grants.find(s.level); it != c.level_grants.end()) {
        for (const auto& [item, n] : it->second) add_item(item, n);
      }
      emit("level_up", level_intro(s.level), true, std::nullopt, s.level);
    }
    if (s.level == 5 && s.xp >= c.completion_xp &&
        s.market.weeks_sold >= c.completion_market_weeks && s.lake_health > 0) {
      s.outcome = Outcome::won;
      emit("won", "You finished all five levels with " + std::to_string(s.coins) +
                      " coins and the lake at " + std::to_string(s.lake_health) + "%.",
           true);
    }
  }

  void drain() {
    if (s.drain_bag.empty()) {
      s.drain_bag = c.drain.draws;
      for (std::size_t i = s.drain_bag.size(); i > 1; --i) {
        const auto j = s.drain_rng.next_below(static_cast<std::uint32_t>(i));
        std::swap(s.drain_bag[i - 1], s.drain_bag[j]);
      }
    }
    const int draw = s.drain_bag.back();
    s.drain_bag.pop_back();
    const int before = s.lake_health;
    s.lake_health = std::max(0, s.lake_health - draw);
    const int removed = before - s.lake_health;
    s.drain_total += removed;
    emit("drain",
         "Another farmer in the valley used AI: lake -" + std::to_string(removed) + "% (now " +
             std::to_string(s.lake_health) + "%)",
         true, std::nullopt, removed);
    if (s.lake_health == 0) lose();
  }

  // ---- actions -----------------------------------------------------------

  void tick() {
    require_active();
    const long long now = s.tick;
    for (std::size_t i = 0; i < s.tiles.size(); ++i) {
      Tile& t = s.tiles[i];
      if (t.content != TileContent::planted || !t.crop) continue;
      CropInstance& ci = *t.crop;
      if (ci.stage == GrowthStage::mature) continue;
      const TilePos pos = s.pos_of(i);
      if (now >= t.watered_until || s.pest_on(pos)) continue;
      const int growth = crop(ci.crop).growth_ticks;
      ++ci.watered_ticks;
      const GrowthStage stage = ci.watered_ticks >= growth      ? GrowthStage::mature
                                : ci.watered_ticks * 2 >= growth ? GrowthStage::growing
                                                                 : GrowthStage::seedling;
      if (stage != ci.stage) {
        ci.stage = stage;
        emit("growth", ci.crop + " at " + tile_name(pos) + " is now " + std::string(to_string(stage)),
             false, pos, ci.watered_ticks);
      }
    }
    s.tick = now + 1;

    if (s.tick % c.drain.interval_ticks == 0) {
      drain();
      if (s.game_over()) return;
    }

    if (s.level >= c.features.pests) {
      const double roll = s.event_rng.next_double();
      if (roll < c.pests.spawn_chance) {
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < s.tiles.size(); ++i) {
          const Tile& t = s.tiles[i];
          if (t.content == TileContent::planted && t.crop && t.crop->stage != GrowthStage::mature &&
              !s.pest_on(s.pos_of(i))) {
            candidates.push_back(i);
          }
        }
        if (!candidates.empty()) {
          const std::size_t idx =
              candidates[s.event_rng.next_below(static_cast<std::uint32_t>(candidates.size()))];
          const TilePos pos = s.pos_of(idx);
          Pest p{s.next_pest_id++, pos, s.tick, std::nullopt};
          s.tiles[idx].crop->pest_damaged = true;
          s.pests.push_back(p);
          emit("pest_spawned",
               "Pests are attacking the " + s.tiles[idx].crop->crop + " at " + tile_name(pos) + "!",
               true, pos, p.id);
        }
      }
    }

    if (s.level >= c.features.scarecrow) {
      const double roll = s.event_rng.next_double();
      if (roll < c.birds.spawn_chance) {
        if (s.scarecrow.active) {
          emit("bird", "Birds flew over, but the scarecrow scared them away.", true);
        } else {
          ++s.pending_bird_strikes;
          emit("bird", "Birds are pecking at the farm! Your next harvest will be smaller.", true,
               std::nullopt, s.pending_bird_strikes);
        }
      }
    }

    check_progress();
  }

  void plant(const action::Plant& a) {
    require_active();
    require_in_bounds(a.tile);
    if (s.at(a.tile).content != TileContent::empty) {
      throw Error(ErrorCode::tile_not_empty, "tile " + tile_name(a.tile) + " is not empty");
    }
    const CropSpec& spec = crop(a.crop);
    if (s.level >= c.features.seasons) {
      const std::string season = c.season_at(s.tick);
      if (!spec.grows_in(season)) {
        throw Error(ErrorCode::off_season, "The Farmer's Almanac says " + spec.name +
                                               " grows in " + join(spec.seasons) + ", but it is " +
                                               season + " now.");
      }
    }
    const std::string seed = seed_item(spec.name);
    if (s.count(seed) < 1) throw Error(ErrorCode::missing_seed, "no " + spec.name + " seeds left");

    add_item(seed, -1);
    Tile& t = s.at(a.tile);
    t.content = TileContent::planted;
    t.crop = CropInstance{spec.name, s.tick, 0, GrowthStage::seedling, false};
    emit("planted", "Planted " + spec.name + " at " + tile_name(a.tile), false, a.tile);
  }

  void water(const action::Water& a) {
    require_active();
    require_in_bounds(a.tile);
    Tile& t = s.at(a.tile);
    if (t.content != TileContent::planted) {
      throw Error(ErrorCode::tile_not_planted, "only planted tiles can be watered");
    }
    t.watered_until = s.tick + c.water_duration_ticks;
    emit("watered", "Watered " + tile_name(a.tile), false, a.tile, t.watered_until);
  }

  void harvest(const action::Harvest& a) {
    require_active();
    require_in_bounds(a.tile);
    Tile& t = s.at(a.tile);
    if (t.content != TileContent::planted || !t.crop) {
      throw Error(ErrorCode::tile_not_planted, "nothing is growing at " + tile_name(a.tile));
    }
    if (t.crop->stage != GrowthStage::mature) {
      throw Error(ErrorCode::crop_not_mature, t.crop->crop + " is not ready to harvest yet");
    }
    const CropSpec& spec = crop(t.crop->crop);
    double factor = 1.0;
    if (t.crop->pest_damaged) factor *= 1.0 - c.pests.yield_penalty;
    const bool birds = s.pending_bird_strikes > 0;
    if (birds) {
      factor *= 1.0 - c.birds.yield_penalty;
      --s.pending_bird_strikes;
    }
    const auto units =
        static_cast<long long>(std::floor(static_cast<double>(spec.yield_units) * factor + 1e-9));
    add_item(spec.name, units);
    add_item(seed_item(spec.name), spec.seed_return);
    s.xp += spec.xp_on_harvest;
    t = Tile{};
    emit("harvest",
         "Harvested " + std::to_string(units) + " " + spec.name + (birds ? " (birds took some)" : "") +
             ", +" + std::to_string(spec.xp_on_harvest) + " XP",
         false, a.tile, units);
    check_progress();
  }

  void ask_farmhand(action::AskFarmhand& a, const Provider* provider) {
    require_active();
    require_level(c.features.farmhand, "The AI farm hand");
    require_ack(a.ack_warning);
    if (a.question.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw Error(ErrorCode::validation, "question is empty");
    }
    if (!a.answer) {
      if (provider == nullptr) {
        throw Error(ErrorCode::provider_unavailable, "no AI provider is available");
      }
      ProviderRequest req{a.question, c.farmhand_persona, std::nullopt};
      ProviderResult res = provider->complete(req);
      a.answer = std::move(res.response_text);
      a.refused = res.refused;
    }
    spend_lake_on_ai(AiActionKind::farmhand_chat, "The farm hand");
    emit("farmhand_answer", *a.answer, false, std::nullopt, a.refused ? 1 : 0);
  }

  std::size_t pest_index(long long id) const {
    for (std::size_t i = 0; i < s.pests.size(); ++i) {
      if (s.pests[i].id == id) return i;
    }
    throw Error(ErrorCode::no_active_pest, "no active pest with id " + std::to_string(id));
  }

  void start_minigame(const action::StartMinigame& a) {
    require_active();
    require_level(c.features.pests, "Pest control");
    Pest& p = s.pests[pest_index(a.pest_id)];
    p.minigame_started_tick = s.tick;
    emit("minigame_started", "Catch the pests at " + tile_name(p.pos) + "!", false, p.pos, p.id);
  }

  void resolve_minigame(const action::ResolveMinigame& a) {
    require_active();
    require_level(c.features.pests, "Pest control");
    const std::size_t idx = pest_index(a.pest_id);
    Pest& p = s.pests[idx];
    if (!p.minigame_started_tick) {
      throw Error(ErrorCode::minigame_not_started, "start the minigame before resolving it");
    }
    if (a.hits < 0) throw Error(ErrorCode::validation, "hits must be non-negative");
    const long long elapsed = s.tick - *p.minigame_started_tick + 1;
    if (a.hits > static_cast<long long>(c.pests.max_hit_rate) * elapsed) {
      throw Error(ErrorCode::hit_rate_exceeded,
                  std::to_string(a.hits) + " hits in " + std::to_string(elapsed) +
                      " tick(s) is faster than anyone can click");
    }
    if (a.hits >= hits_needed(s, c)) {
      const TilePos pos = p.pos;
      s.pests.erase(s.pests.begin() + static_cast<std::ptrdiff_t>(idx));
      emit("pest_removed", "You chased the pests away from " + tile_name(pos) + " by hand!", true,
           pos, a.pest_id);
    } else {
      p.minigame_started_tick.reset();
      emit("minigame_failed", "The pests got away. Try again!", false, p.pos, a.pest_id);
    }
  }

  void craft_pesticide() {
    require_active();
    require_level(c.features.pests, "Pest control");
    if (s.pests.empty()) throw Error(ErrorCode::no_active_pest, "there are no pests to spray");
    for (const auto& [item, n] : c.pests.pesticide_recipe) {
      if (s.count(item) < n) {
        throw Error(ErrorCode::insufficient_items,
                    "pesticide needs " + std::to_string(n) + " " + item);
      }
    }
    for (const auto& [item, n] : c.pests.pesticide_recipe) add_item(item, -n);
    const Pest p = s.pests.front();
    s.pests.erase(s.pests.begin());
    emit("pest_removed", "Homemade pesticide cleared the pests at " + tile_name(p.pos) + ".", true,
         p.pos, p.id);
  }

  void ai_pest_control(const action::AiPestControl& a) {
    require_active();
    require_level(c.features.pests, "Pest control");
    require_ack(a.ack_warning);
    const std::size_t idx = pest_index(a.pest_id);
    const TilePos pos = s.pests[idx].pos;
    s.pests.erase(s.pests.begin() + static_cast<std::ptrdiff_t>(idx));
    emit("pest_removed", "AI pest control cleared the pests at " + tile_name(pos) + ".", false,
         pos, a.pest_id);
    spend_lake_on_ai(AiActionKind::pest_control, "Pest control");
  }

  void place_manual_scarecrow(const action::PlaceManualScarecrow& a) {
    require_active();
    require_level(c.features.scarecrow, "Scarecrows");
    if (s.scarecrow.active) throw Error(ErrorCode::scarecrow_active, "a scarecrow is already up");
    if (a.drawing_ref.empty()) throw Error(ErrorCode::validation, "drawing_ref is empty");
    s.scarecrow = Scarecrow{true, false, a.drawing_ref};
    emit("scarecrow", "You put up the scarecrow you drew.", true);
  }

  void ai_scarecrow(const action::AiScarecrow& a) {
    require_active();
    require_level(c.features.scarecrow, "Scarecrows");
    require_ack(a.ack_warning);
    if (s.scarecrow.active) throw Error(ErrorCode::scarecrow_active, "a scarecrow is already up");
    s.scarecrow = Scarecrow{true, true, c.ai_scarecrow_image};
    spend_lake_on_ai(AiActionKind::scarecrow_image, "The scarecrow generator");
  }

  void require_market_open() const {
    if (!s.market.open) throw Error(ErrorCode::market_closed, "open a market week first");
  }

  DemandModel demand_for(const CropSpec& spec) const {
    auto it = s.market.demand.find(spec.name);
    return DemandModel{it == s.market.demand.end() ? spec.base_demand : it->second,
                       spec.base_price, c.market.elasticity, c.market.max_price};
  }

  void open_week() {
    require_active();
    require_level(c.features.market, "The market");
    if (s.market.open) throw Error(ErrorCode::market_open, "this market week is still open");
    ++s.market.week_index;
    s.market.demand.clear();
    for (const auto& spec : c.crops) {
      const double u = s.market_rng.next_double();
      const double factor = 1.0 + c.market.demand_jitter * (2.0 * u - 1.0);
      s.market.demand[spec.name] =
          std::max(1LL, std::llround(static_cast<double>(spec.base_demand) * factor));
      auto last = s.market.last_week_report.find(spec.name);
      s.market.player_prices[spec.name] =
          last == s.market.last_week_report.end() ? spec.base_price : last->second.price;
    }
    s.market.open = true;
    emit("market", "Market week " + std::to_string(s.market.week_index) + " is open.", true,
         std::nullopt, s.market.week_index);
  }

  void set_price(const action::SetPrice& a) {
    require_active();
    require_level(c.features.market, "The market");
    require_market_open();
    crop(a.crop);
    if (a.price < 1 || a.price > c.market.max_price) {
      throw Error(ErrorCode::invalid_price, "price must be between 1 and " +
                                                std::to_string(c.market.max_price) + " coins");
    }
    s.market.player_prices[a.crop] = a.price;
  }

  void sell() {
    require_active();
    require_level(c.features.market, "The market");
    require_market_open();
    long long stock_total = 0;
    for (const auto& spec : c.crops) stock_total += s.count(spec.name);
    if (stock_total == 0) {
      emit("market", "Nothing to sell this week.", true);
      return;
    }
    std::map<std::string, SaleRecord> report;
    long long units_total = 0;
    long long earned = 0;
    for (const auto& spec : c.crops) {
      const long long stock = s.count(spec.name);
      if (stock == 0) continue;
      const long long price = s.market.player_prices.at(spec.name);
      const long long sold = units_sold(demand_for(spec), stock, price);
      add_item(spec.name, -sold);
      s.coins += sold * price;
      earned += sold * price;
      units_total += sold;
      report[spec.name] = SaleRecord{sold, price};
    }
    s.market.last_week_report = std::move(report);
    ++s.market.weeks_sold;
    s.market.open = false;
    emit("market",
         "Sold " + std::to_string(units_total) + " crops for " + std::to_string(earned) + " coins.",
         true, std::nullopt, earned);
    check_progress();
  }

  void ai_price_suggestion(const action::AiPriceSuggestion& a) {
    require_active();
    require_level(c.features.market, "The market");
    require_ack(a.ack_warning);
    require_market_open();
    const CropSpec& spec = crop(a.crop);
    const long long stock = s.count(spec.name);
    if (stock == 0) throw Error(ErrorCode::insufficient_items, "no " + spec.name + " to sell");
    const long long price = best_price(demand_for(spec), stock);
    s.market.player_prices[spec.name] = price;
    spend_lake_on_ai(AiActionKind::price_suggestion, "Price helper");
    emit("price_suggestion",
         "AI suggests selling " + spec.name + " for " + std::to_string(price) + " coins.", false,
         std::nullopt, price);
  }
};

long long hits_needed(const GameState& s, const GameConfig& c) noexcept {
  return c.pests.required_hits_base +
         static_cast<long long>(c.pests.required_hits_per_level) *
             std::max(0, s.level - c.features.pests);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

GameState new_game(std::uint64_t seed, const GameConfig& config) {
  validate(config);
  GameState s;
  s.seed = seed;
  s.width = config.width;
  s.height = config.height;
  s.tiles.assign(static_cast<std::size_t>(config.width) * static_cast<std::size_t>(config.height),
                 Tile{});
  s.inventory = config.initial_inventory;
  std::erase_if(s.inventory, [](const auto& kv) { return kv.second == 0; });

  const std::uint64_t base = splitmix64(seed);
  s.drain_rng = Pcg32(splitmix64(base + kDrainStream), kDrainStream);
  s.event_rng = Pcg32(splitmix64(base + kEventStream), kEventStream);
  s.market_rng = Pcg32(splitmix64(base + kMarketStream), kMarketStream);

  Pcg32 layout(splitmix64(base + kLayoutStream), kLayoutStream);
  std::vector<std::size_t> order(s.tiles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int k = 0; k < config.obstacles; ++k) {
    const auto remaining = static_cast<std::uint32_t>(order.size() - static_cast<std::size_t>(k));
    const std::size_t j = static_cast<std::size_t>(k) + layout.next_below(remaining);
    std::swap(order[static_cast<std::size_t>(k)], order[j]);
    s.tiles[order[static_cast<std::size_t>(k)]].content = TileContent::obstructed;
  }

  s.status_log = {
      "Welcome to your farm! Plant seeds, water them, and harvest when they are ready.",
      "Your water comes from the community lake, shared with every farmer in the valley.",
      "Every time anyone uses AI, the lake gets a little lower. If it dries up, everyone loses.",
  };
  return s;
}

Events apply_community_drain(GameState& state, const GameConfig& config) {
  Events events;
  Step{state, config, events}.drain();
  return events;
}

Game::Game(std::uint64_t seed, GameConfig config)
    : config_(std::move(config)), base_(new_game(seed, config_)), state_(base_) {}

Game Game::from_snapshot(GameConfig config, GameState snapshot) {
  validate(config);
  if (snapshot.width != config.width || snapshot.height != config.height) {
    throw Error(ErrorCode::malformed, "snapshot grid does not match the game config");
  }
  Game g;
  g.config_ = std::move(config);
  g.base_ = snapshot;
  g.state_ = std::move(snapshot);
  return g;
}

Events Game::apply(const Action& a, const Provider* provider) {
  if (const auto* almanac = std::get_if<action::ReadAlmanac>(&a)) {
    return {Event{"almanac", read_almanac(almanac->topic), std::nullopt, 0}};
  }

  GameState next = state_;
  Events events;
  Action recorded = a;
  Step step{next, config_, events};
  std::visit(overloaded{
                 [&](action::Tick&) { step.tick(); },
                 [&](action::Plant& x) { step.plant(x); },
                 [&](action::Water& x) { step.water(x); },
                 [&](action::Harvest& x) { step.harvest(x); },
                 [&](action::AskFarmhand& x) { step.ask_farmhand(x, provider); },
                 [&](action::ReadAlmanac&) {},
                 [&](action::StartMinigame& x) { step.start_minigame(x); },
                 [&](action::ResolveMinigame& x) { step.resolve_minigame(x); },
                 [&](action::CraftPesticide&) { step.craft_pesticide(); },
                 [&](action::AiPestControl& x) { step.ai_pest_control(x); },
                 [&](action::PlaceManualScarecrow& x) { step.place_manual_scarecrow(x); },
                 [&](action::AiScarecrow& x) { step.ai_scarecrow(x); },
                 [&](action::OpenWeek&) { step.open_week(); },
                 [&](action::SetPrice& x) { step.set_price(x); },
                 [&](action::Sell&) { step.sell(); },
                 [&](action::AiPriceSuggestion& x) { step.ai_price_suggestion(x); },
             },
             recorded);
  state_ = std::move(next);
  actions_.push_back(std::move(recorded));
  return events;
}

long long Game::ai_price_suggestion(std::string crop, bool ack) {
  const Events events = apply(action::AiPriceSuggestion{std::move(crop), ack});
  for (const auto& e : events) {
    if (e.kind == "price_suggestion") return e.value;
  }
  throw Error(ErrorCode::provider_error, "price suggestion produced no price");
}

std::string Game::read_almanac(std::string_view topic) const {
  if (state_.level < config_.features.almanac) {
    throw Error(ErrorCode::feature_locked,
                "The Farmer's Almanac unlocks at level " + std::to_string(config_.features.almanac));
  }
  for (const auto& season : config_.seasons) {
    if (season == topic) {
      std::vector<std::string> names;
      for (const auto& crop : config_.crops) {
        if (crop.grows_in(season)) names.push_back(crop.name);
      }
      return "In " + season + " you can plant: " + (names.empty() ? "nothing" : join(names)) + ".";
    }
  }
  if (const CropSpec* crop = config_.find_crop(topic)) {
    return crop->name + " grows in " + join(crop->seasons) + " and needs " +
           std::to_string(crop->growth_ticks) + " watered ticks. Each harvest gives " +
           std::to_string(crop->yield_units) + " " + crop->name + " and " +
           std::to_string(crop->xp_on_harvest) + " XP.";
  }
  std::vector<std::string> topics = config_.seasons;
  for (const auto& crop : config_.crops) topics.push_back(crop.name);
  return "Almanac topics: " + join(topics) + ". It is " + config_.season_at(state_.tick) + " now.";
}

long long Game::required_hits() const noexcept { return hits_needed(state_, config_); }

Score Game::score() const {
  Score sc;
  sc.coins = state_.coins;
  sc.xp = state_.xp;
  sc.lake_health = state_.lake_health;
  sc.outcome = state_.outcome;
  sc.levels_completed = state_.outcome == Outcome::won ? 5 : state_.level - 1;
  sc.ai_actions = state_.ai_actions;
  return sc;
}

nlohmann::json Game::save() const {
  nlohmann::json out{{"format", "ecoprompt-farm-save/1"},
                     {"seed", base_.seed},
                     {"config", config_},
                     {"actions", nlohmann::json::array()}};
  if (base_ != new_game(base_.seed, config_)) out["base_state"] = base_;
  for (const auto& a : actions_) out["actions"].push_back(action_to_json(a));
  return out;
}

Game Game::load(const nlohmann::json& saved) {
  try {
    GameConfig config = saved.at("config").get<GameConfig>();
    Game g = saved.contains("base_state")
                 ? from_snapshot(std::move(config), saved.at("base_state").get<GameState>())
                 : Game(saved.at("seed").get<std::uint64_t>(), std::move(config));
    for (const auto& aj : saved.at("actions")) {
      const Action a = action_from_json(aj);
      if (const auto* ask = std::get_if<action::AskFarmhand>(&a); ask && !ask->answer) {
        throw Error(ErrorCode::malformed, "saved farm-hand question has no recorded answer");
      }
      g.apply(a);
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::malformed, std::string("invalid save file: ") + e.what());
  }
}

}  // namespace ecoprompt::farm
