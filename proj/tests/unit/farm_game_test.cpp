#include <doctest.h>

#include <functional>

#include "ecoprompt/error.hpp"
#include "ecoprompt/farm/game.hpp"
#include "ecoprompt/provider.hpp"
#include "ecoprompt/serialization.hpp"

using namespace ecoprompt;
using namespace ecoprompt::farm;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::io;
}

TilePos first_empty(const GameState& s) {
  for (std::size_t i = 0; i < s.tiles.size(); ++i) {
    if (s.tiles[i].content == TileContent::empty) return s.pos_of(i);
  }
  FAIL("no empty tile");
  return {};
}

// A game put straight into an arbitrary state, for testing later levels.
Game game_at(int level, int lake, const std::function<void(GameState&)>& tweak = {}) {
  GameState s = new_game(42, GameConfig{});
  s.level = level;
  s.lake_health = lake;
  if (tweak) tweak(s);
  return Game::from_snapshot(GameConfig{}, s);
}

Game with_pest(int level, int lake) {
  return game_at(level, lake, [](GameState& s) {
    const TilePos pos = first_empty(s);
    s.at(pos).content = TileContent::planted;
    s.at(pos).crop = CropInstance{"wheat", 0, 0, GrowthStage::seedling, true};
    s.pests.push_back(Pest{s.next_pest_id++, pos, 0, std::nullopt});
  });
}

long long ai_entries(const GameState& s) {
  long long n = 0;
  for (const auto& line : s.status_log) n += line.find("used AI: lake -") != std::string::npos;
  return n;
}

const MockProvider kMock(0);

}  // namespace

TEST_CASE("new game starts at level 1 with a full lake") {
  const Game g(42, GameConfig{});
  const GameState& s = g.state();
  CHECK(s.lake_health == 100);
  CHECK(s.level == 1);
  CHECK(s.coins == 0);
  CHECK(s.xp == 0);
  CHECK(s.tick == 0);
  CHECK(s.tiles.size() == 24);
  long long obstacles = 0;
  for (const auto& t : s.tiles) obstacles += t.content == TileContent::obstructed;
  CHECK(obstacles == 2);
  CHECK(s.status_log.size() == 3);
  const Score sc = g.score();
  CHECK(sc.coins == 0);
  CHECK(sc.xp == 0);
  CHECK(sc.lake_health == 100);
  CHECK(sc.levels_completed == 0);
  CHECK(sc.outcome == Outcome::in_progress);
}

TEST_CASE("zero-size grid is rejected") {
  GameConfig c;
  c.width = 0;
  c.height = 0;
  CHECK(code_of([&] { Game g(1, c); }) == ErrorCode::config);
}

TEST_CASE("same seed and actions give identical states") {
  Game a(42, GameConfig{});
  Game b(42, GameConfig{});
  const TilePos p = first_empty(a.state());
  for (Game* g : {&a, &b}) {
    g->plant(p, "wheat");
    for (int i = 0; i < 20; ++i) {
      g->water(p);
      g->tick();
    }
  }
  CHECK(a.state() == b.state());
  CHECK(Game(43, GameConfig{}).state() != Game(42, GameConfig{}).state());
}

TEST_CASE("plant, water, grow and harvest") {
  Game g(42, GameConfig{});
  const TilePos p = first_empty(g.state());
  g.plant(p, "wheat");
  CHECK(g.state().at(p).content == TileContent::planted);
  CHECK(g.state().count("seed:wheat") == 1);
  CHECK(code_of([&] { g.harvest(p); }) == ErrorCode::crop_not_mature);
  const GameState before = g.state();
  CHECK(code_of([&] { g.harvest(p); }) == ErrorCode::crop_not_mature);
  CHECK(g.state() == before);

  const int growth = GameConfig{}.find_crop("wheat")->growth_ticks;
  for (int i = 0; i < growth; ++i) {
    g.water(p);
    g.tick();
  }
  CHECK(g.state().at(p).crop->stage == GrowthStage::mature);
  g.harvest(p);
  CHECK(g.state().at(p).content == TileContent::empty);
  CHECK(g.state().count("wheat") == 2);
  CHECK(g.state().count("seed:wheat") == 2);
  CHECK(g.state().xp == 2);
}

TEST_CASE("growth stage arithmetic for a 5-tick crop") {
  GameConfig c;
  c.initial_inventory = {{"seed:carrot", 2}};
  Game watered(7, c);
  Game dry(7, c);
  const TilePos p = first_empty(watered.state());
  watered.plant(p, "carrot");
  dry.plant(p, "carrot");
  for (int i = 0; i < 5; ++i) {
    watered.water(p);
    watered.tick();
    dry.tick();
  }
  CHECK(watered.state().at(p).crop->stage == GrowthStage::mature);
  CHECK(dry.state().at(p).crop->stage == GrowthStage::seedling);
}

TEST_CASE("one watering lasts the configured number of ticks") {
  Game g(42, GameConfig{});
  const TilePos p = first_empty(g.state());
  g.plant(p, "wheat");
  g.water(p);
  for (int i = 0; i < 6; ++i) g.tick();
  CHECK(g.state().at(p).crop->watered_ticks == GameConfig{}.water_duration_ticks);
}

TEST_CASE("planting errors") {
  Game g(42, GameConfig{});
  CHECK(code_of([&] { g.plant({-1, 0}, "wheat"); }) == ErrorCode::out_of_bounds);
  CHECK(code_of([&] { g.plant({6, 0}, "wheat"); }) == ErrorCode::out_of_bounds);
  CHECK(code_of([&] { g.plant(first_empty(g.state()), "banana"); }) == ErrorCode::unknown_crop);
  CHECK(code_of([&] { g.plant(first_empty(g.state()), "carrot"); }) == ErrorCode::missing_seed);
  CHECK(code_of([&] { g.water(first_empty(g.state())); }) == ErrorCode::tile_not_planted);
  const TilePos p = first_empty(g.state());
  g.plant(p, "wheat");
  CHECK(code_of([&] { g.plant(p, "wheat"); }) == ErrorCode::tile_not_empty);
  CHECK(g.actions().size() == 1);
}

TEST_CASE("off-season planting cites the almanac from level 2") {
  Game g = game_at(2, 100, [](GameState& s) {
    s.inventory["seed:kale"] = 1;
    s.tick = GameConfig{}.season_length_ticks;  // summer
  });
  REQUIRE(g.config().season_at(g.state().tick) == "summer");
  try {
    g.plant(first_empty(g.state()), "kale");
    FAIL("expected off_season");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::off_season);
    CHECK(std::string(e.what()).find("Almanac") != std::string::npos);
  }
  // Level 1 ignores seasons.
  Game early = game_at(1, 100, [](GameState& s) {
    s.inventory["seed:kale"] = 1;
    s.tick = GameConfig{}.season_length_ticks;
  });
  CHECK_NOTHROW(early.plant(first_empty(early.state()), "kale"));
}

TEST_CASE("community drain accounting and clamp") {
  GameState s = new_game(5, GameConfig{});
  s.lake_health = 1;
  s.drain_bag = {3};
  apply_community_drain(s, GameConfig{});
  CHECK(s.lake_health == 0);
  CHECK(s.outcome == Outcome::lost);
  CHECK(s.drain_total == 1);

  Game g(11, GameConfig{});
  for (int i = 0; i < 24; ++i) g.tick();
  // Three drains draw one full bag of {1, 2, 3}.
  CHECK(g.state().lake_health == 94);
  CHECK(g.state().drain_total == 6);
}

TEST_CASE("same seed gives the same drain sequence") {
  Game a(3, GameConfig{});
  Game b(3, GameConfig{});
  for (int i = 0; i < 200; ++i) {
    a.tick();
    b.tick();
    REQUIRE(a.state().lake_health == b.state().lake_health);
  }
}

TEST_CASE("ticking after the lake is empty is rejected") {
  Game g = game_at(1, 0, [](GameState& s) { s.outcome = Outcome::lost; });
  CHECK(code_of([&] { g.tick(); }) == ErrorCode::game_over);
  CHECK(g.score().outcome == Outcome::lost);
}

TEST_CASE("lake at zero loses regardless of coins") {
  Game g = game_at(2, 2, [](GameState& s) { s.coins = 10000; });
  g.ask_farmhand("help?", kMock, true);
  CHECK(g.state().lake_health == 0);
  CHECK(g.score().outcome == Outcome::lost);
  CHECK(code_of([&] { g.tick(); }) == ErrorCode::game_over);
}

TEST_CASE("farm hand costs lake and needs the warning") {
  Game g = game_at(2, 80);
  CHECK(code_of([&] { g.ask_farmhand("What grows in spring?", kMock, false); }) ==
        ErrorCode::warning_required);
  CHECK(g.state().lake_health == 80);
  const Events ev = g.ask_farmhand("What grows in spring?", kMock, true);
  CHECK(g.state().lake_health == 78);
  CHECK(g.state().ai_actions.at("farmhand_chat") == 1);
  bool answered = false;
  for (const auto& e : ev) answered |= e.kind == "farmhand_answer" && !e.message.empty();
  CHECK(answered);
  CHECK(ai_entries(g.state()) == 1);

  Game locked(1, GameConfig{});
  CHECK(code_of([&] { locked.ask_farmhand("hi", kMock, true); }) == ErrorCode::feature_locked);
}

TEST_CASE("provider failure leaves the lake alone") {
  struct Failing final : Provider {
    ProviderResult complete(const ProviderRequest&) const override {
      throw Error(ErrorCode::provider_unavailable, "down");
    }
    std::string_view name() const noexcept override { return "failing"; }
  } failing;
  Game g = game_at(2, 80);
  CHECK(code_of([&] { g.ask_farmhand("hi", failing, true); }) == ErrorCode::provider_unavailable);
  CHECK(g.state().lake_health == 80);
  CHECK(g.actions().empty());
}

TEST_CASE("almanac is free and level-gated") {
  Game g = game_at(2, 77);
  CHECK(g.read_almanac("summer") == "In summer you can plant: wheat, tomato.");
  CHECK(g.read_almanac("gardening").find("Almanac topics") == 0);
  g.apply(action::ReadAlmanac{"winter"});
  CHECK(g.state().lake_health == 77);
  CHECK(g.actions().empty());
  CHECK(code_of([] { (void)Game(1, GameConfig{}).read_almanac("summer"); }) ==
        ErrorCode::feature_locked);
}

TEST_CASE("manual pest minigame costs nothing") {
  Game g = with_pest(3, 62);
  const long long id = g.state().pests.front().id;
  CHECK(code_of([&] { g.resolve_minigame(id, 100); }) == ErrorCode::minigame_not_started);
  g.start_minigame(id);
  const long long need = g.required_hits();
  CHECK(need == 12);
  for (long long t = 0; t * GameConfig{}.pests.max_hit_rate < need; ++t) g.tick();
  const int lake = g.state().lake_health;
  g.resolve_minigame(id, need);
  CHECK(g.state().find_pest(id) == nullptr);
  CHECK(g.state().lake_health == lake);
  CHECK(g.state().ai_actions.empty());
}

TEST_CASE("minigame anti-cheat and failure") {
  Game g = with_pest(4, 90);
  const long long id = g.state().pests.front().id;
  CHECK(g.required_hits() == 16);
  g.start_minigame(id);
  CHECK(code_of([&] { g.resolve_minigame(id, 7); }) == ErrorCode::hit_rate_exceeded);
  g.resolve_minigame(id, 6);
  REQUIRE(g.state().pests.size() == 1);
  CHECK_FALSE(g.state().pests.front().minigame_started_tick.has_value());
}

TEST_CASE("AI pest control removes the pest for a lake cost") {
  Game g = with_pest(3, 62);
  const long long id = g.state().pests.front().id;
  CHECK(code_of([&] { g.ai_pest_control(id, false); }) == ErrorCode::warning_required);
  g.ai_pest_control(id, true);
  CHECK(g.state().find_pest(id) == nullptr);
  CHECK(g.state().lake_health == 57);
  CHECK(code_of([&] { g.ai_pest_control(id, true); }) == ErrorCode::no_active_pest);
}

TEST_CASE("pesticide crafting consumes the recipe") {
  Game g = with_pest(3, 70);
  const GameState before = g.state();
  CHECK(code_of([&] { g.craft_pesticide(); }) == ErrorCode::insufficient_items);
  CHECK(g.state() == before);
  Game stocked = game_at(3, 70, [](GameState& s) {
    const TilePos pos = first_empty(s);
    s.at(pos).content = TileContent::planted;
    s.at(pos).crop = CropInstance{"wheat", 0, 0, GrowthStage::seedling, true};
    s.pests.push_back(Pest{s.next_pest_id++, pos, 0, std::nullopt});
    s.inventory["wheat"] = 3;
  });
  stocked.craft_pesticide();
  CHECK(stocked.state().pests.empty());
  CHECK(stocked.state().count("wheat") == 1);
  CHECK(stocked.state().lake_health == 70);
}

TEST_CASE("pests block growth") {
  Game g = with_pest(3, 90);
  const TilePos p = g.state().pests.front().pos;
  g.water(p);
  g.tick();
  CHECK(g.state().at(p).crop->watered_ticks == 0);
}

TEST_CASE("scarecrows") {
  Game manual = game_at(4, 50);
  manual.place_manual_scarecrow("drawing:local-1");
  CHECK(manual.state().scarecrow.active);
  CHECK_FALSE(manual.state().scarecrow.ai_generated);
  CHECK(manual.state().lake_health == 50);
  CHECK(code_of([&] { manual.ai_scarecrow(true); }) == ErrorCode::scarecrow_active);

  Game ai = game_at(4, 50);
  CHECK(code_of([&] { ai.ai_scarecrow(false); }) == ErrorCode::warning_required);
  ai.ai_scarecrow(true);
  CHECK(ai.state().lake_health == 42);
  CHECK(ai.state().scarecrow.ai_generated);
  CHECK(ai.state().scarecrow.image_ref == GameConfig{}.ai_scarecrow_image);
  CHECK(ai_entries(ai.state()) == 1);

  CHECK(code_of([] { game_at(3, 50).place_manual_scarecrow("d"); }) == ErrorCode::feature_locked);
}

TEST_CASE("bird strike shrinks the next harvest") {
  auto ready = [](int strikes) {
    return game_at(4, 90, [strikes](GameState& s) {
      const TilePos pos = first_empty(s);
      s.at(pos).content = TileContent::planted;
      s.at(pos).crop = CropInstance{"tomato", 0, 8, GrowthStage::mature, false};
      s.pending_bird_strikes = strikes;
    });
  };
  Game clean = ready(0);
  Game pecked = ready(1);
  clean.harvest(first_empty(new_game(42, GameConfig{})));
  pecked.harvest(first_empty(new_game(42, GameConfig{})));
  CHECK(clean.state().count("tomato") == 4);
  CHECK(pecked.state().count("tomato") == 2);
  CHECK(pecked.state().pending_bird_strikes == 0);
}

TEST_CASE("market week flow") {
  Game g = game_at(5, 90, [](GameState& s) { s.inventory["wheat"] = 5; });
  CHECK(code_of([&] { g.sell(); }) == ErrorCode::market_closed);
  CHECK(code_of([&] { g.set_price("wheat", 3); }) == ErrorCode::market_closed);
  g.open_week();
  CHECK(code_of([&] { g.open_week(); }) == ErrorCode::market_open);
  CHECK(code_of([&] { g.set_price("wheat", 0); }) == ErrorCode::invalid_price);
  CHECK(code_of([&] { g.set_price("wheat", 101); }) == ErrorCode::invalid_price);
  CHECK(code_of([&] { g.ai_price_suggestion("carrot", true); }) == ErrorCode::insufficient_items);
  CHECK(code_of([&] { g.ai_price_suggestion("wheat", false); }) == ErrorCode::warning_required);
  const long long price = g.ai_price_suggestion("wheat", true);
  CHECK(price >= 1);
  CHECK(g.state().lake_health == 87);
  g.sell();
  CHECK_FALSE(g.state().market.open);
  CHECK(g.state().market.weeks_sold == 1);
  const SaleRecord rec = g.state().market.last_week_report.at("wheat");
  CHECK(rec.price == price);
  CHECK(g.state().coins == rec.units_sold * price);
  CHECK(g.state().count("wheat") == 5 - rec.units_sold);
}

TEST_CASE("selling with no stock is a logged no-op") {
  Game g = game_at(5, 90);
  g.open_week();
  const auto log_size = g.state().status_log.size();
  g.sell();
  CHECK(g.state().market.weeks_sold == 0);
  CHECK(g.state().status_log.size() == log_size + 1);
}

TEST_CASE("completing level 5 with water left wins") {
  Game g = game_at(5, 30, [](GameState& s) {
    s.xp = GameConfig{}.completion_xp;
    s.market.weeks_sold = GameConfig{}.completion_market_weeks - 1;
    s.inventory["wheat"] = 4;
  });
  g.open_week();
  g.sell();
  CHECK(g.score().outcome == Outcome::won);
  CHECK(g.score().levels_completed == 5);
}

TEST_CASE("level-up grants seeds and unlocks features") {
  Game g = game_at(1, 100, [](GameState& s) {
    s.xp = GameConfig{}.level_xp_thresholds[0] - 2;
    const TilePos pos = first_empty(s);
    s.at(pos).content = TileContent::planted;
    s.at(pos).crop = CropInstance{"wheat", 0, 6, GrowthStage::mature, false};
  });
  g.harvest(first_empty(new_game(42, GameConfig{})));
  CHECK(g.state().level == 2);
  CHECK(g.state().count("seed:carrot") == 3);
  CHECK_NOTHROW((void)g.read_almanac("spring"));
}

TEST_CASE("rejected actions leave state and log untouched") {
  Game g(42, GameConfig{});
  const GameState before = g.state();
  CHECK_THROWS_AS(g.harvest({0, 0}), Error);
  CHECK_THROWS_AS(g.open_week(), Error);
  CHECK(g.state() == before);
  CHECK(g.actions().empty());
}

TEST_CASE("save and load replay to the same state") {
  Game g = game_at(2, 90);
  const TilePos p = first_empty(g.state());
  g.plant(p, "wheat");
  for (int i = 0; i < 30; ++i) {
    if (g.state().at(p).content == TileContent::planted) {
      if (g.state().at(p).crop->stage == GrowthStage::mature) {
        g.harvest(p);
        g.plant(p, "wheat");
      }
      g.water(p);
    }
    g.tick();
  }
  g.ask_farmhand("what now?", kMock, true);
  const nlohmann::json saved = g.save();
  const Game loaded = Game::load(nlohmann::json::parse(saved.dump()));
  CHECK(loaded.state() == g.state());
  CHECK(nlohmann::json(loaded.state()).dump() == nlohmann::json(g.state()).dump());
}

TEST_CASE("state JSON round-trips exactly") {
  Game g = with_pest(4, 55);
  g.place_manual_scarecrow("drawing:x");
  for (int i = 0; i < 17; ++i) g.tick();
  const nlohmann::json j = g.state();
  CHECK(j.get<GameState>() == g.state());
}

TEST_CASE("actions decode from the wire format") {
  const Action a = action_from_json(
      nlohmann::json{{"type", "plant"}, {"payload", {{"x", 1}, {"y", 2}, {"crop", "wheat"}}}});
  const auto* plant = std::get_if<action::Plant>(&a);
  REQUIRE(plant != nullptr);
  CHECK(plant->tile == TilePos{1, 2});
  CHECK(plant->crop == "wheat");
  const Action ai = action_from_json(
      nlohmann::json{{"type", "ai_scarecrow"}, {"payload", nlohmann::json::object()}, {"ack_warning", true}});
  CHECK(std::get<action::AiScarecrow>(ai).ack_warning);
  CHECK(action_from_json(action_to_json(a)) == a);
  CHECK(code_of([] { (void)action_from_json(nlohmann::json{{"type", "dance"}}); }) ==
        ErrorCode::malformed);
  CHECK(code_of([] {
          (void)action_from_json(nlohmann::json{{"type", "plant"}, {"payload", {{"crop", 3}}}});
        }) == ErrorCode::malformed);
}
