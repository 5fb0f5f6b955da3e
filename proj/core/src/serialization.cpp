#include "ecoprompt/serialization.hpp"

#include <string>

#include "ecoprompt/error.hpp"

namespace ecoprompt {
namespace {

using nlohmann::json;

template <class T>
void opt(const json& j, const char* key, T& field) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) field = it->template get<T>();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void to_json(json& j, const ModelProfile& v) {
  j = json{{"name", v.name},
           {"ttft_s", v.ttft_s},
           {"gen_speed_tps", v.gen_speed_tps},
           {"gpu_power_w", v.gpu_power_w},
           {"gpu_utilization", v.gpu_utilization},
           {"nongpu_power_w", v.nongpu_power_w}};
}

void from_json(const json& j, ModelProfile& v) {
  v = ModelProfile{};
  opt(j, "name", v.name);
  opt(j, "ttft_s", v.ttft_s);
  opt(j, "gen_speed_tps", v.gen_speed_tps);
  opt(j, "gpu_power_w", v.gpu_power_w);
  opt(j, "gpu_utilization", v.gpu_utilization);
  opt(j, "nongpu_power_w", v.nongpu_power_w);
}

void to_json(json& j, const DatacenterProfile& v) {
  j = json{{"name", v.name},
           {"pue", v.pue},
           {"wue_l_per_kwh", v.wue_l_per_kwh},
           {"cif_g_per_kwh", v.cif_g_per_kwh}};
}

void from_json(const json& j, DatacenterProfile& v) {
  v = DatacenterProfile{};
  opt(j, "name", v.name);
  opt(j, "pue", v.pue);
  opt(j, "wue_l_per_kwh", v.wue_l_per_kwh);
  opt(j, "cif_g_per_kwh", v.cif_g_per_kwh);
}

void to_json(json& j, const RelatableConstants& v) {
  j = json{{"drop_volume_ml", v.drop_volume_ml},
           {"balloon_mass_g", v.balloon_mass_g},
           {"led_power_w", v.led_power_w}};
}

void from_json(const json& j, RelatableConstants& v) {
  v = RelatableConstants{};
  opt(j, "drop_volume_ml", v.drop_volume_ml);
  opt(j, "balloon_mass_g", v.balloon_mass_g);
  opt(j, "led_power_w", v.led_power_w);
}

void to_json(json& j, const QueryUsage& v) {
  j = json{{"input_tokens", v.input_tokens},
           {"output_tokens", v.output_tokens},
           {"measured_latency_s", optional_number(v.measured_latency_s)}};
}

void from_json(const json& j, QueryUsage& v) {
  v = QueryUsage{};
  opt(j, "input_tokens", v.input_tokens);
  opt(j, "output_tokens", v.output_tokens);
  if (auto it = j.find("measured_latency_s"); it != j.end() && !it->is_null()) {
    v.measured_latency_s = it->get<double>();
  }
}

void to_json(json& j, const FootprintEstimate& v) {
  j = json{{"energy_wh", v.energy_wh},
           {"water_ml", v.water_ml},
           {"carbon_g", v.carbon_g},
           {"latency_s", v.latency_s},
           {"label", kEstimateLabel}};
}

void from_json(const json& j, FootprintEstimate& v) {
  v = FootprintEstimate{};
  v.energy_wh = j.at("energy_wh").get<double>();
  v.water_ml = j.at("water_ml").get<double>();
  v.carbon_g = j.at("carbon_g").get<double>();
  opt(j, "latency_s", v.latency_s);
}

void to_json(json& j, const RelatableUnits& v) {
  j = json{{"water_drops", v.water_drops},
           {"co2_balloons", v.co2_balloons},
           {"led_minutes", v.led_minutes},
           {"display",
            {{"water", v.water_display},
             {"co2", v.co2_display},
             {"led", v.led_display},
             {"summary", v.compact()}}}};
}

void to_json(json& j, const ResourceLimits& v) {
  j = json{{"water_ml", optional_number(v.water_ml)},
           {"carbon_g", optional_number(v.carbon_g)},
           {"energy_wh", optional_number(v.energy_wh)}};
}

void from_json(const json& j, ResourceLimits& v) { v = limits_from_request(j); }

ResourceLimits limits_from_request(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::malformed, "limits must be a JSON object");
  ResourceLimits limits;
  auto read = [&](const char* key) -> std::optional<double> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) {
      throw Error(ErrorCode::malformed, std::string("'") + key + "' must be a number or null");
    }
    return it->get<double>();
  };
  limits.water_ml = read("water_ml");
  limits.carbon_g = read("carbon_g");
  limits.energy_wh = read("energy_wh");
  return limits;
}

void to_json(json& j, const StatusThresholds& v) {
  j = json{{"approaching", v.approaching}, {"exceeded", v.exceeded}};
}

void from_json(const json& j, StatusThresholds& v) {
  v = StatusThresholds{};
  opt(j, "approaching", v.approaching);
  opt(j, "exceeded", v.exceeded);
}

void to_json(json& j, const ResourceStatus& v) {
  j = json{{"status", to_string(v.state)},
           {"fill_fraction", v.fill_fraction},
           {"display_fraction", v.display_fraction},
           {"limit", optional_number(v.limit)}};
}

void to_json(json& j, const StatusTransition& v) {
  j = json{{"resource", to_string(v.resource)},
           {"from", to_string(v.from)},
           {"to", to_string(v.to)}};
}

json statuses_to_json(const LimitStatus& statuses) {
  json out = json::object();
  for (const auto& st : statuses) out[std::string(to_string(st.resource))] = st;
  return out;
}

void to_json(json& j, const ProviderResult& v) {
  j = json{{"response_text", v.response_text},
           {"input_tokens", v.input_tokens},
           {"output_tokens", v.output_tokens},
           {"measured_latency_s", v.measured_latency_s},
           {"provider", v.provider_name},
           {"refused", v.refused}};
}

void to_json(json& j, const LiveProviderConfig& v) {
  j = json{{"base_url", v.base_url},
           {"endpoint_path", v.endpoint_path},
           {"model", v.model},
           {"api_key_env", v.api_key_env},
           {"timeout_s", v.timeout_s},
           {"extra_params", v.extra_params}};
}

void from_json(const json& j, LiveProviderConfig& v) {
  v = LiveProviderConfig{};
  opt(j, "base_url", v.base_url);
  opt(j, "endpoint_path", v.endpoint_path);
  opt(j, "model", v.model);
  opt(j, "api_key_env", v.api_key_env);
  opt(j, "timeout_s", v.timeout_s);
  opt(j, "extra_params", v.extra_params);
}

}  // namespace ecoprompt

namespace ecoprompt::farm {
namespace {

using nlohmann::json;
using ecoprompt::opt;

template <class E, std::size_t N>
E parse_enum(const json& j, const E (&values)[N], const char* what) {
  const std::string name = j.get<std::string>();
  for (E v : values) {
    if (to_string(v) == name) return v;
  }
  throw Error(ErrorCode::malformed, std::string("unknown ") + what + " '" + name + "'");
}

constexpr TileContent kContents[] = {TileContent::empty, TileContent::planted,
                                     TileContent::obstructed};
constexpr GrowthStage kStages[] = {GrowthStage::seedling, GrowthStage::growing,
                                   GrowthStage::mature};
constexpr Outcome kOutcomes[] = {Outcome::in_progress, Outcome::won, Outcome::lost};

json rng_json(const Pcg32& r) { return json{{"state", r.state()}, {"inc", r.inc()}}; }
Pcg32 rng_from(const json& j) {
  return Pcg32::from_raw(j.at("state").get<std::uint64_t>(), j.at("inc").get<std::uint64_t>());
}

}  // namespace

void to_json(json& j, const CropSpec& v) {
  j = json{{"name", v.name},
           {"seasons", v.seasons},
           {"growth_ticks", v.growth_ticks},
           {"yield_units", v.yield_units},
           {"xp_on_harvest", v.xp_on_harvest},
           {"base_price", v.base_price},
           {"base_demand", v.base_demand},
           {"seed_return", v.seed_return}};
}

void from_json(const json& j, CropSpec& v) {
  v = CropSpec{};
  v.name = j.at("name").get<std::string>();
  opt(j, "seasons", v.seasons);
  opt(j, "growth_ticks", v.growth_ticks);
  opt(j, "yield_units", v.yield_units);
  opt(j, "xp_on_harvest", v.xp_on_harvest);
  opt(j, "base_price", v.base_price);
  opt(j, "base_demand", v.base_demand);
  opt(j, "seed_return", v.seed_return);
}

void to_json(json& j, const GameConfig& v) {
  json grants = json::object();
  for (const auto& [level, items] : v.level_grants) grants[std::to_string(level)] = items;
  j = json{
      {"width", v.width},
      {"height", v.height},
      {"obstacles", v.obstacles},
      {"water_duration_ticks", v.water_duration_ticks},
      {"season_length_ticks", v.season_length_ticks},
      {"seasons", v.seasons},
      {"crops", v.crops},
      {"initial_inventory", v.initial_inventory},
      {"level_xp_thresholds", v.level_xp_thresholds},
      {"level_grants", grants},
      {"completion_xp", v.completion_xp},
      {"completion_market_weeks", v.completion_market_weeks},
      {"features",
       {{"seasons", v.features.seasons},
        {"farmhand", v.features.farmhand},
        {"almanac", v.features.almanac},
        {"pests", v.features.pests},
        {"scarecrow", v.features.scarecrow},
        {"market", v.features.market}}},
      {"ai_costs",
       {{"farmhand_chat", v.ai_costs.farmhand_chat},
        {"pest_control", v.ai_costs.pest_control},
        {"scarecrow_image", v.ai_costs.scarecrow_image},
        {"price_suggestion", v.ai_costs.price_suggestion}}},
      {"drain", {{"interval_ticks", v.drain.interval_ticks}, {"draws", v.drain.draws}}},
      {"pests",
       {{"spawn_chance", v.pests.spawn_chance},
        {"required_hits_base", v.pests.required_hits_base},
        {"required_hits_per_level", v.pests.required_hits_per_level},
        {"max_hit_rate", v.pests.max_hit_rate},
        {"yield_penalty", v.pests.yield_penalty},
        {"pesticide_recipe", v.pests.pesticide_recipe}}},
      {"birds", {{"spawn_chance", v.birds.spawn_chance}, {"yield_penalty", v.birds.yield_penalty}}},
      {"market",
       {{"elasticity", v.market.elasticity},
        {"demand_jitter", v.market.demand_jitter},
        {"max_price", v.market.max_price}}},
      {"ai_scarecrow_image", v.ai_scarecrow_image},
      {"farmhand_persona", v.farmhand_persona},
  };
}

void from_json(const json& j, GameConfig& v) {
  v = GameConfig{};
  opt(j, "width", v.width);
  opt(j, "height", v.height);
  opt(j, "obstacles", v.obstacles);
  opt(j, "water_duration_ticks", v.water_duration_ticks);
  opt(j, "season_length_ticks", v.season_length_ticks);
  opt(j, "seasons", v.seasons);
  opt(j, "crops", v.crops);
  opt(j, "initial_inventory", v.initial_inventory);
  opt(j, "level_xp_thresholds", v.level_xp_thresholds);
  if (auto it = j.find("level_grants"); it != j.end() && it->is_object()) {
    v.level_grants.clear();
    for (const auto& [key, items] : it->items()) {
      v.level_grants[std::stoi(key)] = items.get<std::map<std::string, long long>>();
    }
  }
  opt(j, "completion_xp", v.completion_xp);
  opt(j, "completion_market_weeks", v.completion_market_weeks);
  if (auto it = j.find("features"); it != j.end()) {
    opt(*it, "seasons", v.features.seasons);
    opt(*it, "farmhand", v.features.farmhand);
    opt(*it, "almanac", v.features.almanac);
    opt(*it, "pests", v.features.pests);
    opt(*it, "scarecrow", v.features.scarecrow);
    opt(*it, "market", v.features.market);
  }
  if (auto it = j.find("ai_costs"); it != j.end()) {
    opt(*it, "farmhand_chat", v.ai_costs.farmhand_chat);
    opt(*it, "pest_control", v.ai_costs.pest_control);
    opt(*it, "scarecrow_image", v.ai_costs.scarecrow_image);
    opt(*it, "price_suggestion", v.ai_costs.price_suggestion);
  }
  if (auto it = j.find("drain"); it != j.end()) {
    opt(*it, "interval_ticks", v.drain.interval_ticks);
    opt(*it, "draws", v.drain.draws);
  }
  if (auto it = j.find("pests"); it != j.end()) {
    opt(*it, "spawn_chance", v.pests.spawn_chance);
    opt(*it, "required_hits_base", v.pests.required_hits_base);
    opt(*it, "required_hits_per_level", v.pests.required_hits_per_level);
    opt(*it, "max_hit_rate", v.pests.max_hit_rate);
    opt(*it, "yield_penalty", v.pests.yield_penalty);
    opt(*it, "pesticide_recipe", v.pests.pesticide_recipe);
  }
  if (auto it = j.find("birds"); it != j.end()) {
    opt(*it, "spawn_chance", v.birds.spawn_chance);
    opt(*it, "yield_penalty", v.birds.yield_penalty);
  }
  if (auto it = j.find("market"); it != j.end()) {
    opt(*it, "elasticity", v.market.elasticity);
    opt(*it, "demand_jitter", v.market.demand_jitter);
    opt(*it, "max_price", v.market.max_price);
  }
  opt(j, "ai_scarecrow_image", v.ai_scarecrow_image);
  opt(j, "farmhand_persona", v.farmhand_persona);
}

void to_json(json& j, const TilePos& v) { j = json{{"x", v.x}, {"y", v.y}}; }
void from_json(const json& j, TilePos& v) {
  v.x = j.at("x").get<int>();
  v.y = j.at("y").get<int>();
}

void to_json(json& j, const GameState& s) {
  json tiles = json::array();
  for (const Tile& t : s.tiles) {
    json tj{{"content", to_string(t.content)}, {"watered_until", t.watered_until}};
    if (t.crop) {
      tj["crop"] = {{"crop", t.crop->crop},
                    {"planted_at", t.crop->planted_at},
                    {"watered_ticks", t.crop->watered_ticks},
                    {"stage", to_string(t.crop->stage)},
                    {"pest_damaged", t.crop->pest_damaged}};
    }
    tiles.push_back(std::move(tj));
  }
  json pests = json::array();
  for (const Pest& p : s.pests) {
    pests.push_back({{"id", p.id},
                     {"tile", p.pos},
                     {"spawned_tick", p.spawned_tick},
                     {"minigame_started_tick", p.minigame_started_tick
                                                   ? json(*p.minigame_started_tick)
                                                   : json(nullptr)}});
  }
  json report = json::object();
  for (const auto& [crop, rec] : s.market.last_week_report) {
    report[crop] = {{"units_sold", rec.units_sold}, {"price", rec.price}};
  }
  j = json{
      {"seed", s.seed},
      {"tick", s.tick},
      {"level", s.level},
      {"width", s.width},
      {"height", s.height},
      {"tiles", std::move(tiles)},
      {"inventory", s.inventory},
      {"coins", s.coins},
      {"xp", s.xp},
      {"lake_health", s.lake_health},
      {"status_log", s.status_log},
      {"pests", std::move(pests)},
      {"next_pest_id", s.next_pest_id},
      {"pending_bird_strikes", s.pending_bird_strikes},
      {"scarecrow",
       {{"active", s.scarecrow.active},
        {"ai_generated", s.scarecrow.ai_generated},
        {"image_ref", s.scarecrow.image_ref}}},
      {"market",
       {{"open", s.market.open},
        {"week_index", s.market.week_index},
        {"demand", s.market.demand},
        {"last_week_report", std::move(report)},
        {"player_prices", s.market.player_prices},
        {"weeks_sold", s.market.weeks_sold}}},
      {"ai_actions", s.ai_actions},
      {"ai_lake_cost", s.ai_lake_cost},
      {"drain_total", s.drain_total},
      {"drain_bag", s.drain_bag},
      {"rng",
       {{"drain", rng_json(s.drain_rng)},
        {"event", rng_json(s.event_rng)},
        {"market", rng_json(s.market_rng)}}},
      {"outcome", to_string(s.outcome)},
  };
}

void from_json(const json& j, GameState& s) {
  s = GameState{};
  s.seed = j.at("seed").get<std::uint64_t>();
  s.tick = j.at("tick").get<long long>();
  s.level = j.at("level").get<int>();
  s.width = j.at("width").get<int>();
  s.height = j.at("height").get<int>();
  for (const json& tj : j.at("tiles")) {
    Tile t;
    t.content = parse_enum(tj.at("content"), kContents, "tile content");
    t.watered_until = tj.at("watered_until").get<long long>();
    if (auto it = tj.find("crop"); it != tj.end() && !it->is_null()) {
      CropInstance c;
      c.crop = it->at("crop").get<std::string>();
      c.planted_at = it->at("planted_at").get<long long>();
      c.watered_ticks = it->at("watered_ticks").get<int>();
      c.stage = parse_enum(it->at("stage"), kStages, "growth stage");
      c.pest_damaged = it->at("pest_damaged").get<bool>();
      t.crop = std::move(c);
    }
    s.tiles.push_back(std::move(t));
  }
  if (s.tiles.size() != static_cast<std::size_t>(s.width) * static_cast<std::size_t>(s.height)) {
    throw Error(ErrorCode::malformed, "tile count does not match grid size");
  }
  s.inventory = j.at("inventory").get<std::map<std::string, long long>>();
  s.coins = j.at("coins").get<long long>();
  s.xp = j.at("xp").get<long long>();
  s.lake_health = j.at("lake_health").get<int>();
  s.status_log = j.at("status_log").get<std::vector<std::string>>();
  for (const json& pj : j.at("pests")) {
    Pest p;
    p.id = pj.at("id").get<long long>();
    p.pos = pj.at("tile").get<TilePos>();
    p.spawned_tick = pj.at("spawned_tick").get<long long>();
    if (auto it = pj.find("minigame_started_tick"); it != pj.end() && !it->is_null()) {
      p.minigame_started_tick = it->get<long long>();
    }
    s.pests.push_back(p);
  }
  s.next_pest_id = j.at("next_pest_id").get<long long>();
  s.pending_bird_strikes = j.at("pending_bird_strikes").get<int>();
  const json& sc = j.at("scarecrow");
  s.scarecrow.active = sc.at("active").get<bool>();
  s.scarecrow.ai_generated = sc.at("ai_generated").get<bool>();
  s.scarecrow.image_ref = sc.at("image_ref").get<std::string>();
  const json& m = j.at("market");
  s.market.open = m.at("open").get<bool>();
  s.market.week_index = m.at("week_index").get<long long>();
  s.market.demand = m.at("demand").get<std::map<std::string, long long>>();
  for (const auto& [crop, rec] : m.at("last_week_report").items()) {
    s.market.last_week_report[crop] =
        SaleRecord{rec.at("units_sold").get<long long>(), rec.at("price").get<long long>()};
  }
  s.market.player_prices = m.at("player_prices").get<std::map<std::string, long long>>();
  s.market.weeks_sold = m.at("weeks_sold").get<long long>();
  s.ai_actions = j.at("ai_actions").get<std::map<std::string, long long>>();
  s.ai_lake_cost = j.at("ai_lake_cost").get<long long>();
  s.drain_total = j.at("drain_total").get<long long>();
  s.drain_bag = j.at("drain_bag").get<std::vector<int>>();
  const json& rng = j.at("rng");
  s.drain_rng = rng_from(rng.at("drain"));
  s.event_rng = rng_from(rng.at("event"));
  s.market_rng = rng_from(rng.at("market"));
  s.outcome = parse_enum(j.at("outcome"), kOutcomes, "outcome");
}

void to_json(json& j, const Event& v) {
  j = json{{"kind", v.kind}, {"message", v.message}, {"value", v.value}};
  if (v.tile) j["tile"] = *v.tile;
}

void to_json(json& j, const Score& v) {
  j = json{{"coins", v.coins},
           {"xp", v.xp},
           {"lake_health", v.lake_health},
           {"levels_completed", v.levels_completed},
           {"ai_actions", v.ai_actions},
           {"outcome", to_string(v.outcome)}};
}

}  // namespace ecoprompt::farm
