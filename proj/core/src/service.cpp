#include "ecoprompt/service.hpp"

#include <algorithm>
#include <cstdio>

#include "ecoprompt/error.hpp"
#include "ecoprompt/serialization.hpp"

namespace ecoprompt {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSessionsDir = "sessions";
constexpr const char* kGamesDir = "games";

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 &&
         std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || c == '-';
         });
}

json totals_json(const SessionBudget& b, const RelatableConstants& rc) {
  return json{{"footprint", b.totals()}, {"relatable", to_relatable(b.totals(), rc)}};
}

}  // namespace

ProviderFactory default_provider_factory(const Config& config) {
  return [settings = config.provider, model = config.model](ProviderMode mode) {
    return make_provider(settings, model, mode);
  };
}

Service::Service(Config config, std::optional<fs::path> data_dir, ProviderFactory factory)
    : config_(std::move(config)),
      data_dir_(std::move(data_dir)),
      factory_(factory ? std::move(factory) : default_provider_factory(config_)),
      id_rng_(std::random_device{}()) {
  validate(config_);
  game_provider_ = factory_(config_.provider.mode);
  if (data_dir_) {
    std::error_code ec;
    fs::create_directories(*data_dir_ / kSessionsDir, ec);
    fs::create_directories(*data_dir_ / kGamesDir, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create data dir " + data_dir_->string());
    replay_all();
  }
}

json Service::health() const {
  std::shared_lock lock(mu_);
  return json{{"status", "ok"},
              {"provider_mode", to_string(config_.provider.mode)},
              {"sessions", sessions_.size()},
              {"games", games_.size()}};
}

std::string Service::fresh_id(char prefix) {
  char buf[24];
  for (;;) {
    std::snprintf(buf, sizeof buf, "%c-%016llx", prefix,
                  static_cast<unsigned long long>(id_rng_()));
    const std::string id(buf);
    if (!sessions_.count(id) && !games_.count(id)) return id;
  }
}

std::shared_ptr<Service::Session> Service::find_session(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::not_found, "no session '" + id + "'");
  return it->second;
}

std::shared_ptr<Service::GameEntry> Service::find_game(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = games_.find(id);
  if (it == games_.end()) throw Error(ErrorCode::not_found, "no game '" + id + "'");
  return it->second;
}

void Service::persist(Session& s, const std::string& kind, json payload) {
  if (s.log) s.log->append(EventRecord{utc_timestamp(), s.id, kind, std::move(payload)});
}

void Service::persist(GameEntry& g, const std::string& kind, json payload) {
  if (g.log) g.log->append(EventRecord{utc_timestamp(), g.id, kind, std::move(payload)});
}

void Service::maybe_compact(Session& s) {
  if (!s.log || s.log->record_count() < config_.service.compaction_threshold) return;
  json history = json::array();
  for (const auto& e : s.budget.history()) {
    history.push_back(json{{"prompt_id", e.prompt_id}, {"estimate", e.estimate}});
  }
  s.log->rewrite({EventRecord{utc_timestamp(), s.id, "snapshot",
                              json{{"provider_mode", to_string(s.mode)},
                                   {"created_at", s.created_at},
                                   {"limits", s.budget.limits()},
                                   {"history", std::move(history)}}}});
}

void Service::maybe_compact(GameEntry& g) {
  if (!g.log || g.log->record_count() < config_.service.compaction_threshold) return;
  g.log->rewrite({EventRecord{utc_timestamp(), g.id, "snapshot",
                              json{{"created_at", g.created_at},
                                   {"config", g.game->config()},
                                   {"state", g.game->state()}}}});
}

// ---- sessions ------------------------------------------------------------

json Service::session_view(const Session& s) const {
  return json{{"session_id", s.id},
              {"provider_mode", to_string(s.mode)},
              {"created_at", s.created_at},
              {"prompt_count", s.budget.history().size()},
              {"totals", totals_json(s.budget, config_.relatable)},
              {"limits", s.budget.limits()},
              {"statuses", statuses_to_json(s.budget.status())}};
}

json Service::create_session(const json& body) {
  if (!body.is_null() && !body.is_object()) {
    throw Error(ErrorCode::malformed, "request body must be a JSON object");
  }
  ProviderMode mode = config_.provider.mode;
  if (body.is_object()) {
    if (auto it = body.find("provider_mode"); it != body.end() && !it->is_null()) {
      if (!it->is_string()) throw Error(ErrorCode::malformed, "provider_mode must be a string");
      mode = parse_provider_mode(it->get<std::string>());
    }
  }
  auto provider = factory_(mode);  // live without a key fails here

  auto s = std::make_shared<Session>();
  s->mode = mode;
  s->created_at = utc_timestamp();
  s->budget = SessionBudget(config_.thresholds);
  s->provider = std::move(provider);

  std::unique_lock lock(mu_);
  s->id = fresh_id('s');
  if (data_dir_) s->log = std::make_unique<EventLog>(*data_dir_ / kSessionsDir / (s->id + ".jsonl"));
  persist(*s, "session_created",
          json{{"provider_mode", to_string(mode)}, {"created_at", s->created_at}});
  sessions_[s->id] = s;
  return json{{"session_id", s->id}, {"provider_mode", to_string(mode)},
              {"created_at", s->created_at}};
}

json Service::get_session(const std::string& id) const {
  auto s = find_session(id);
  std::lock_guard lock(s->mu);
  return session_view(*s);
}

void Service::delete_session(const std::string& id) {
  std::shared_ptr<Session> s;
  {
    std::unique_lock lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::not_found, "no session '" + id + "'");
    s = it->second;
    sessions_.erase(it);
  }
  std::lock_guard lock(s->mu);
  if (s->log) {
    const fs::path path = s->log->path();
    s->log.reset();
    std::error_code ec;
    fs::remove(path, ec);
  }
}

json Service::prompt(const std::string& id, const json& body) {
  auto s = find_session(id);
  if (!body.is_object()) throw Error(ErrorCode::malformed, "request body must be a JSON object");
  auto it = body.find("text");
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::malformed, "field 'text' must be a string");
  }
  ProviderRequest request{it->get<std::string>(), std::nullopt, std::nullopt};
  validate(request);

  std::lock_guard lock(s->mu);
  if (!s->provider) s->provider = factory_(s->mode);
  // Nothing is logged or recorded unless the provider succeeds.
  const ProviderResult result = s->provider->complete(request);
  const QueryUsage usage = result.usage();
  const FootprintEstimate fp = estimate_footprint(config_.model, config_.datacenter, usage);
  const std::string prompt_id = "p-" + std::to_string(s->budget.history().size() + 1);

  SessionBudget next = s->budget;
  const auto outcome = next.record(prompt_id, fp);

  persist(*s, "prompt", json{{"prompt_id", prompt_id}, {"text", request.prompt_text},
                             {"result", result}});
  persist(*s, "footprint", json{{"prompt_id", prompt_id},
                                {"usage", usage},
                                {"estimate", fp},
                                {"totals", next.totals()}});
  s->budget = std::move(next);
  maybe_compact(*s);

  return json{{"session_id", s->id},
              {"prompt_id", prompt_id},
              {"response_text", result.response_text},
              {"refused", result.refused},
              {"provider", result.provider_name},
              {"usage", usage},
              {"footprint", fp},
              {"relatable", to_relatable(fp, config_.relatable)},
              {"totals", totals_json(s->budget, config_.relatable)},
              {"statuses", statuses_to_json(outcome.statuses)},
              {"transitions", outcome.transitions}};
}

json Service::set_limits(const std::string& id, const json& body) {
  auto s = find_session(id);
  const ResourceLimits limits = limits_from_request(body);
  validate(limits);
  std::lock_guard lock(s->mu);
  SessionBudget next = s->budget;
  const LimitStatus statuses = next.set_limits(limits);
  persist(*s, "limit_change", json{{"limits", limits}});
  s->budget = std::move(next);
  maybe_compact(*s);
  return json{{"session_id", s->id}, {"limits", limits}, {"statuses", statuses_to_json(statuses)}};
}

std::vector<std::string> Service::session_ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

SessionBudget Service::budget(const std::string& id) const {
  auto s = find_session(id);
  std::lock_guard lock(s->mu);
  return s->budget;
}

// ---- games ---------------------------------------------------------------

json Service::game_view(const GameEntry& g) const {
  const farm::Game& game = *g.game;
  return json{{"game_id", g.id},
              {"created_at", g.created_at},
              {"state", game.state()},
              {"score", game.score()},
              {"required_hits", game.required_hits()},
              {"season", game.config().season_at(game.state().tick)}};
}

json Service::create_game(const json& body) {
  if (!body.is_null() && !body.is_object()) {
    throw Error(ErrorCode::malformed, "request body must be a JSON object");
  }
  std::uint64_t seed = 0;
  bool have_seed = false;
  if (body.is_object()) {
    if (auto it = body.find("seed"); it != body.end() && !it->is_null()) {
      if (!it->is_number_integer() || (it->is_number_integer() && !it->is_number_unsigned() &&
                                        it->get<long long>() < 0)) {
        throw Error(ErrorCode::malformed, "seed must be a non-negative integer");
      }
      seed = it->get<std::uint64_t>();
      have_seed = true;
    }
  }

  auto g = std::make_shared<GameEntry>();
  g->created_at = utc_timestamp();
  std::unique_lock lock(mu_);
  if (!have_seed) seed = id_rng_() >> 1;
  g->game.emplace(seed, config_.game);
  g->id = fresh_id('g');
  if (data_dir_) g->log = std::make_unique<EventLog>(*data_dir_ / kGamesDir / (g->id + ".jsonl"));
  persist(*g, "game_created",
          json{{"seed", seed}, {"created_at", g->created_at}, {"config", config_.game}});
  games_[g->id] = g;
  return game_view(*g);
}

json Service::game_state(const std::string& id) const {
  auto g = find_game(id);
  std::lock_guard lock(g->mu);
  return game_view(*g);
}

json Service::game_action(const std::string& id, const json& body) {
  auto g = find_game(id);
  if (!body.is_object()) throw Error(ErrorCode::malformed, "request body must be a JSON object");
  json request = body;
  // Farm-hand answers come from the provider, never from the client.
  if (auto p = request.find("payload"); p != request.end() && p->is_object()) {
    p->erase("answer");
    p->erase("refused");
  }
  const farm::Action action = farm::action_from_json(request);

  std::lock_guard lock(g->mu);
  farm::Game next = *g->game;
  const std::size_t before = next.actions().size();
  farm::Events events = next.apply(action, game_provider_.get());
  if (next.actions().size() > before) {
    persist(*g, "game_action", json{{"action", farm::action_to_json(next.actions().back())}});
    persist(*g, "game_event", json{{"events", events}});
  }
  g->game = std::move(next);
  maybe_compact(*g);

  json out = game_view(*g);
  out["events"] = events;
  return out;
}

std::vector<std::string> Service::game_ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : games_) ids.push_back(id);
  return ids;
}

farm::GameState Service::state(const std::string& id) const {
  auto g = find_game(id);
  std::lock_guard lock(g->mu);
  return g->game->state();
}

// ---- replay --------------------------------------------------------------

void Service::replay_all() {
  auto scan = [](const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  for (const auto& path : scan(*data_dir_ / kSessionsDir)) {
    if (auto s = replay_session(path)) sessions_[s->id] = std::move(s);
  }
  for (const auto& path : scan(*data_dir_ / kGamesDir)) {
    if (auto g = replay_game(path)) games_[g->id] = std::move(g);
  }
}

std::shared_ptr<Service::Session> Service::replay_session(const fs::path& path) {
  const std::string id = path.stem().string();
  if (!valid_id(id)) return nullptr;
  const ReadResult log = read_log(path);
  if (log.records.empty()) return nullptr;

  auto s = std::make_shared<Session>();
  s->id = id;
  s->budget = SessionBudget(config_.thresholds);
  try {
    for (const auto& [line, rec] : log.records) {
      const json& p = rec.payload;
      if (rec.kind == "session_created") {
        s->mode = parse_provider_mode(p.at("provider_mode").get<std::string>());
        s->created_at = p.at("created_at").get<std::string>();
      } else if (rec.kind == "snapshot") {
        s->mode = parse_provider_mode(p.at("provider_mode").get<std::string>());
        s->created_at = p.at("created_at").get<std::string>();
        s->budget = SessionBudget(config_.thresholds);
        s->budget.set_limits(p.at("limits").get<ResourceLimits>());
        for (const auto& e : p.at("history")) {
          s->budget.record(e.at("prompt_id").get<std::string>(),
                           e.at("estimate").get<FootprintEstimate>());
        }
      } else if (rec.kind == "footprint") {
        s->budget.record(p.at("prompt_id").get<std::string>(),
                         p.at("estimate").get<FootprintEstimate>());
      } else if (rec.kind == "limit_change") {
        s->budget.set_limits(p.at("limits").get<ResourceLimits>());
      } else if (rec.kind != "prompt") {
        throw Error(ErrorCode::malformed, "unknown record kind '" + rec.kind + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed, path.string() + ": " + e.what());
  }
  s->log = std::make_unique<EventLog>(path);
  if (log.torn_tail) s->log->truncate_to(log.records);
  return s;
}

std::shared_ptr<Service::GameEntry> Service::replay_game(const fs::path& path) {
  const std::string id = path.stem().string();
  if (!valid_id(id)) return nullptr;
  const ReadResult log = read_log(path);
  if (log.records.empty()) return nullptr;

  auto g = std::make_shared<GameEntry>();
  g->id = id;
  try {
    for (const auto& [line, rec] : log.records) {
      const json& p = rec.payload;
      if (rec.kind == "game_created") {
        g->created_at = p.at("created_at").get<std::string>();
        g->game.emplace(p.at("seed").get<std::uint64_t>(), p.at("config").get<farm::GameConfig>());
      } else if (rec.kind == "snapshot") {
        g->created_at = p.at("created_at").get<std::string>();
        g->game = farm::Game::from_snapshot(p.at("config").get<farm::GameConfig>(),
                                            p.at("state").get<farm::GameState>());
      } else if (rec.kind == "game_action") {
        if (!g->game) throw Error(ErrorCode::malformed, "action before game_created");
        g->game->apply(farm::action_from_json(p.at("action")), nullptr);
      } else if (rec.kind != "game_event") {
        throw Error(ErrorCode::malformed, "unknown record kind '" + rec.kind + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed, path.string() + ": " + e.what());
  }
  if (!g->game) return nullptr;
  g->log = std::make_unique<EventLog>(path);
  if (log.torn_tail) g->log->truncate_to(log.records);
  return g;
}

}  // namespace ecoprompt
