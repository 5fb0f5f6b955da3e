#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "ecoprompt/budget.hpp"
#include "ecoprompt/farm/config.hpp"
#include "ecoprompt/footprint.hpp"
#include "ecoprompt/provider.hpp"

namespace ecoprompt {

enum class ProviderMode { mock, live };

std::string_view to_string(ProviderMode mode) noexcept;
/// Throws Error(validation) for anything but "mock" or "live".
ProviderMode parse_provider_mode(std::string_view text);

struct ProviderSettings {
  ProviderMode mode = ProviderMode::mock;
  std::uint64_t mock_seed = 0;
  LiveProviderConfig live;

  bool operator==(const ProviderSettings&) const = default;
};

struct ServiceSettings {
  std::string cors_origin = "*";
  std::size_t compaction_threshold = 500;  // records per log before a snapshot

  bool operator==(const ServiceSettings&) const = default;
};

/// Everything tunable, loaded from one JSON document (config/ecoprompt.json).
/// A default-constructed Config equals the shipped file.
struct Config {
  ModelProfile model;
  DatacenterProfile datacenter;
  RelatableConstants relatable;
  StatusThresholds thresholds;
  ProviderSettings provider;
  ServiceSettings service;
  farm::GameConfig game;

  bool operator==(const Config&) const = default;
};

/// Parses and validates. Absent keys keep their defaults.
Config config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const Config& config);

/// Throws Error(config) for unreadable files, bad JSON or failed validation.
Config load_config(const std::filesystem::path& path);

void validate(const Config& config);

/// Mock by default; live reads the key from the configured environment variable.
std::shared_ptr<const Provider> make_provider(const ProviderSettings& settings,
                                              const ModelProfile& model, ProviderMode mode);

}  // namespace ecoprompt
