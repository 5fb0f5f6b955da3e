#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecoprompt/budget.hpp"
#include "ecoprompt/config.hpp"
#include "ecoprompt/event_log.hpp"
#include "ecoprompt/farm/game.hpp"
#include "ecoprompt/provider.hpp"

namespace ecoprompt {

/// Builds the provider for a session or game. Throws Error(live_unavailable)
/// when live mode cannot be served.
using ProviderFactory = std::function<std::shared_ptr<const Provider>(ProviderMode)>;

ProviderFactory default_provider_factory(const Config& config);

/// Calculator sessions and farm games behind the HTTP API.
///
/// With a data directory every mutation is appended to a per-session or
/// per-game JSONL log before it is applied in memory, and the constructor
/// replays whatever logs it finds. Logs are compacted into a single snapshot
/// record once they reach `service.compaction_threshold` records.
///
/// All methods are thread-safe. Mutations of one session or game are
/// serialized; different ids proceed independently.
class Service {
 public:
  explicit Service(Config config, std::optional<std::filesystem::path> data_dir = std::nullopt,
                   ProviderFactory factory = {});

  const Config& config() const noexcept { return config_; }

  nlohmann::json health() const;

  // Sessions. Unknown ids throw Error(not_found).
  nlohmann::json create_session(const nlohmann::json& body);
  nlohmann::json get_session(const std::string& id) const;
  void delete_session(const std::string& id);
  nlohmann::json prompt(const std::string& id, const nlohmann::json& body);
  nlohmann::json set_limits(const std::string& id, const nlohmann::json& body);
  std::vector<std::string> session_ids() const;
  SessionBudget budget(const std::string& id) const;

  // Games.
  nlohmann::json create_game(const nlohmann::json& body);
  nlohmann::json game_state(const std::string& id) const;
  nlohmann::json game_action(const std::string& id, const nlohmann::json& body);
  std::vector<std::string> game_ids() const;
  farm::GameState state(const std::string& id) const;

 private:
  struct Session {
    std::string id;
    ProviderMode mode = ProviderMode::mock;
    std::string created_at;
    SessionBudget budget;
    std::shared_ptr<const Provider> provider;  // resolved lazily after replay
    std::unique_ptr<EventLog> log;
    mutable std::mutex mu;
  };
  struct GameEntry {
    std::string id;
    std::string created_at;
    std::optional<farm::Game> game;
    std::unique_ptr<EventLog> log;
    mutable std::mutex mu;
  };

  std::shared_ptr<Session> find_session(const std::string& id) const;
  std::shared_ptr<GameEntry> find_game(const std::string& id) const;
  std::string fresh_id(char prefix);

  void persist(Session& s, const std::string& kind, nlohmann::json payload);
  void persist(GameEntry& g, const std::string& kind, nlohmann::json payload);
  void maybe_compact(Session& s);
  void maybe_compact(GameEntry& g);
  nlohmann::json session_view(const Session& s) const;
  nlohmann::json game_view(const GameEntry& g) const;

  void replay_all();
  std::shared_ptr<Session> replay_session(const std::filesystem::path& path);
  std::shared_ptr<GameEntry> replay_game(const std::filesystem::path& path);

  Config config_;
  std::optional<std::filesystem::path> data_dir_;
  ProviderFactory factory_;
  std::shared_ptr<const Provider> game_provider_;

  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<std::string, std::shared_ptr<GameEntry>> games_;
  std::mt19937_64 id_rng_;
};

}  // namespace ecoprompt
