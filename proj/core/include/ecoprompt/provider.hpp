#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ecoprompt/footprint.hpp"

namespace ecoprompt {

struct ProviderRequest {
  std::string prompt_text;
  std::optional<std::string> system_hint;
  std::optional<long long> max_output_tokens;
};

/// Throws Error(validation) when the prompt is blank after trimming.
void validate(const ProviderRequest& request);

struct ProviderResult {
  std::string response_text;
  long long input_tokens = 0;
  long long output_tokens = 0;
  double measured_latency_s = 0.0;
  std::string provider_name;
  // A refusal is still a completed inference and still has a footprint.
  bool refused = false;

  QueryUsage usage() const {
    return QueryUsage{input_tokens, output_tokens, measured_latency_s};
  }

  bool operator==(const ProviderResult&) const = default;
};

/// ceil(code points / 4); used whenever a provider omits usage metadata.
long long count_tokens(std::string_view text) noexcept;

/// A text-generation backend. Implementations must be safe to call from
/// several threads at once.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual ProviderResult complete(const ProviderRequest& request) const = 0;
  virtual std::string_view name() const noexcept = 0;
};

/// Offline, deterministic stand-in for a chat model.
///
/// The response length class is picked from the prompt: an explicit
/// "respond in one word" instruction gets a one-word answer, story/explain
/// style prompts get a verbose narrative, everything else a short answer.
/// Other instructions about resource use are ignored on purpose. Within a
/// class the template is chosen by hashing (seed, prompt). Latency is
/// synthesized from the model profile, so identical inputs give identical
/// results on every platform.
class MockProvider final : public Provider {
 public:
  explicit MockProvider(std::uint64_t seed = 0, ModelProfile profile = {});

  ProviderResult complete(const ProviderRequest& request) const override;
  std::string_view name() const noexcept override { return "mock"; }

  enum class LengthClass { one_word, short_answer, verbose, refusal };
  static LengthClass classify(std::string_view prompt) noexcept;

 private:
  std::uint64_t seed_;
  ModelProfile profile_;
};

struct LiveProviderConfig {
  std::string base_url = "https://api.openai.com";
  std::string endpoint_path = "/v1/chat/completions";
  std::string model = "gpt-4o-mini";
  std::string api_key_env = "ECOPROMPT_API_KEY";
  double timeout_s = 30.0;
  // Forwarded verbatim into the request body (temperature, top_p, ...).
  nlohmann::json extra_params = nlohmann::json::object();

  bool operator==(const LiveProviderConfig&) const = default;
};

/// OpenAI-style chat-completions client over HTTP(S).
class HttpChatProvider final : public Provider {
 public:
  HttpChatProvider(LiveProviderConfig config, std::string api_key);

  /// Reads the key from `config.api_key_env`; throws Error(live_unavailable)
  /// when it is unset or empty.
  static std::unique_ptr<HttpChatProvider> from_environment(const LiveProviderConfig& config);

  ProviderResult complete(const ProviderRequest& request) const override;
  std::string_view name() const noexcept override { return "live"; }

  /// Builds the JSON request body; exposed for wire-format tests.
  nlohmann::json build_body(const ProviderRequest& request) const;

  /// Maps a chat-completions response body to a result. Missing usage
  /// metadata falls back to count_tokens().
  static ProviderResult parse_response(const nlohmann::json& body, const ProviderRequest& request,
                                       double latency_s);

 private:
  LiveProviderConfig config_;
  std::string api_key_;
};

}  // namespace ecoprompt
