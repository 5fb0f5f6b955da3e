#include "ecoprompt/config.hpp"

#include <fstream>

#include "ecoprompt/error.hpp"
#include "ecoprompt/serialization.hpp"

namespace ecoprompt {

std::string_view to_string(ProviderMode mode) noexcept {
  return mode == ProviderMode::live ? "live" : "mock";
}

ProviderMode parse_provider_mode(std::string_view text) {
  if (text == "mock") return ProviderMode::mock;
  if (text == "live") return ProviderMode::live;
  throw Error(ErrorCode::validation,
              "provider mode must be 'mock' or 'live', got '" + std::string(text) + "'");
}

void validate(const Config& config) {
  validate(config.model);
  validate(config.datacenter);
  validate(config.relatable);
  if (!(config.thresholds.approaching > 0.0 &&
        config.thresholds.approaching <= config.thresholds.exceeded)) {
    throw Error(ErrorCode::config, "status thresholds must satisfy 0 < approaching <= exceeded");
  }
  if (!(config.provider.live.timeout_s > 0.0)) {
    throw Error(ErrorCode::config, "provider timeout must be positive");
  }
  if (config.service.compaction_threshold < 2) {
    throw Error(ErrorCode::config, "compaction threshold must be at least 2");
  }
  farm::validate(config.game);
}

Config config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::config, "config must be a JSON object");
  Config c;
  try {
    if (j.contains("model_profile")) c.model = j.at("model_profile").get<ModelProfile>();
    if (j.contains("datacenter_profile")) {
      c.datacenter = j.at("datacenter_profile").get<DatacenterProfile>();
    }
    if (j.contains("relatable_units")) {
      c.relatable = j.at("relatable_units").get<RelatableConstants>();
    }
    if (j.contains("budget")) c.thresholds = j.at("budget").get<StatusThresholds>();
    if (auto it = j.find("provider"); it != j.end()) {
      c.provider.mode = parse_provider_mode(it->value("mode", std::string("mock")));
      c.provider.mock_seed = it->value("mock_seed", std::uint64_t{0});
      if (it->contains("live")) c.provider.live = it->at("live").get<LiveProviderConfig>();
    }
    if (auto it = j.find("service"); it != j.end()) {
      c.service.cors_origin = it->value("cors_origin", c.service.cors_origin);
      c.service.compaction_threshold =
          it->value("compaction_threshold", c.service.compaction_threshold);
    }
    if (j.contains("game")) c.game = j.at("game").get<farm::GameConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::config, std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

nlohmann::json config_to_json(const Config& c) {
  return nlohmann::json{
      {"model_profile", c.model},
      {"datacenter_profile", c.datacenter},
      {"relatable_units", c.relatable},
      {"budget", c.thresholds},
      {"provider",
       {{"mode", to_string(c.provider.mode)},
        {"mock_seed", c.provider.mock_seed},
        {"live", c.provider.live}}},
      {"service",
       {{"cors_origin", c.service.cors_origin},
        {"compaction_threshold", c.service.compaction_threshold}}},
      {"game", c.game},
  };
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, "cannot open config file " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false, true);
  if (j.is_discarded()) throw Error(ErrorCode::config, path.string() + " is not valid JSON");
  return config_from_json(j);
}

std::shared_ptr<const Provider> make_provider(const ProviderSettings& settings,
                                              const ModelProfile& model, ProviderMode mode) {
  if (mode == ProviderMode::live) return HttpChatProvider::from_environment(settings.live);
  return std::make_shared<MockProvider>(settings.mock_seed, model);
}

}  // namespace ecoprompt
